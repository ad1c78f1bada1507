#pragma once

#include "dfarm/table.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dfarm::analysis {

struct FeatureScore {
    std::string feature;
    double score = 0.0;  // in [0, 1]
};

// Correlation ratio eta = sqrt(SS_between / SS_total) of `values` grouped by
// `labels`; 0 when the values are constant.
double correlation_ratio(const std::vector<std::optional<std::string>>& labels, std::span<const double> values);

// Numeric features score |Pearson r| with the target, categorical features
// the correlation ratio. Rows with a missing feature or target value are
// skipped per feature. Sorted by descending score, ties in column order.
std::vector<FeatureScore> feature_scores(std::span<const DataColumn> features, const DataColumn& target);

}  // namespace dfarm::analysis
