#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dfarm::models {

struct ClassMetrics {
    std::string label;
    double precision = 0.0;  // 0 when nothing was predicted as this class
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t support = 0;
};

struct ClassificationMetrics {
    double accuracy = 0.0;
    std::vector<ClassMetrics> per_class;  // sorted by label
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
};

struct RegressionMetrics {
    double mse = 0.0;
    double mae = 0.0;
    std::optional<double> r2;  // empty when the truth is constant
};

ClassificationMetrics classification_metrics(std::span<const std::string> predicted, std::span<const std::string> truth);
RegressionMetrics regression_metrics(std::span<const double> predicted, std::span<const double> truth);

}  // namespace dfarm::models
