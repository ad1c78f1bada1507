#pragma once

#include "dfarm/table.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dfarm::analysis {

enum class OutlierMethod { zscore, iqr };

const char* to_string(OutlierMethod m) noexcept;
OutlierMethod outlier_method_from_string(std::string_view text);

// Default multipliers: 3 standard deviations, 1.5 interquartile ranges.
double default_outlier_k(OutlierMethod m) noexcept;

struct OutlierReport {
    OutlierMethod method = OutlierMethod::iqr;
    double k = 1.5;
    std::size_t n = 0;
    std::vector<std::size_t> flagged;
    // zscore: mean and sample sd; iqr: type-7 quartiles. A value is flagged
    // iff it lies strictly outside [lower, upper].
    double center = 0.0;
    double scale = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool degenerate = false;
    std::string note;
};

OutlierReport detect_outliers(std::span<const double> sample, OutlierMethod method, double k);
OutlierReport detect_outliers(std::span<const double> sample, OutlierMethod method);
// Flagged indices refer to rows of the column; missing rows are never flagged.
OutlierReport detect_outliers(const DataColumn& column, OutlierMethod method, double k);

}  // namespace dfarm::analysis
