#pragma once

#include "dfarm/table.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dfarm::analysis {

struct Histogram {
    std::vector<double> edges;  // bins + 1 ascending edges; last bin closed
    std::vector<std::size_t> counts;
};

// Freedman-Diaconis bin width 2 IQR n^(-1/3); at least one bin and at most n.
Histogram freedman_diaconis(std::span<const double> values);

struct NumericSummary {
    std::string name;
    std::size_t count = 0;
    std::size_t missing = 0;
    // NaN when count is 0 (sd also when count < 2).
    double mean = 0.0, sd = 0.0, min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
    std::size_t iqr_outliers = 0;  // same rule as detect_outliers(iqr, 1.5)
    Histogram histogram;
};

struct LevelFrequency {
    std::string level;
    std::size_t count = 0;
    double share = 0.0;
};

struct CategoricalSummary {
    std::string name;
    std::size_t count = 0;
    std::size_t missing = 0;
    std::vector<LevelFrequency> levels;  // first-appearance order
};

// Symmetric with unit diagonal; undefined entries (constant column, fewer
// than two complete pairs) are 0.
struct AssociationMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> values;
};

struct EdaReport {
    std::vector<NumericSummary> numeric;
    std::vector<CategoricalSummary> categorical;
    AssociationMatrix pearson;
    AssociationMatrix spearman;
    AssociationMatrix cramers_v;
};

double cramers_v(const std::vector<std::optional<std::string>>& a, const std::vector<std::optional<std::string>>& b);

EdaReport eda_summary(std::span<const DataColumn> table);

}  // namespace dfarm::analysis
