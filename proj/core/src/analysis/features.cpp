#include "dfarm/analysis/features.hpp"

#include "dfarm/analysis/descriptive.hpp"
#include "dfarm/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace dfarm::analysis {

double correlation_ratio(const std::vector<std::optional<std::string>>& labels, std::span<const double> values) {
    if (labels.size() != values.size()) throw InvalidArgument("correlation_ratio: length mismatch");
    std::map<std::string, std::pair<double, std::size_t>> groups;
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!labels[i] || std::isnan(values[i])) continue;
        auto& g = groups[*labels[i]];
        g.first += values[i];
        ++g.second;
        total += values[i];
        ++count;
    }
    if (count < 2) return 0.0;
    const double grand = total / static_cast<double>(count);
    double sst = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!labels[i] || std::isnan(values[i])) continue;
        sst += (values[i] - grand) * (values[i] - grand);
    }
    if (sst <= 0.0) return 0.0;
    double ssb = 0.0;
    for (const auto& [level, g] : groups) {
        const double m = g.first / static_cast<double>(g.second);
        ssb += static_cast<double>(g.second) * (m - grand) * (m - grand);
    }
    return std::clamp(std::sqrt(ssb / sst), 0.0, 1.0);
}

std::vector<FeatureScore> feature_scores(std::span<const DataColumn> features, const DataColumn& target) {
    if (features.empty()) throw InvalidArgument("feature_scores needs at least one feature");
    if (!target.is_numeric()) throw InvalidArgument("feature_scores needs a numeric target");
    const auto y = target.numbers();
    std::vector<FeatureScore> scores;
    for (const auto& f : features) {
        if (f.size() != y.size())
            throw InvalidArgument("feature '" + f.name() + "' length differs from the target");
        double score = 0.0;
        if (f.is_numeric()) {
            const auto x = f.numbers();
            std::vector<double> xs, ys;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (!std::isnan(x[i]) && !std::isnan(y[i])) {
                    xs.push_back(x[i]);
                    ys.push_back(y[i]);
                }
            score = std::abs(pearson(xs, ys));
        } else {
            score = correlation_ratio(f.labels(), y);
        }
        scores.push_back({f.name(), score});
    }
    std::stable_sort(scores.begin(), scores.end(),
                     [](const FeatureScore& a, const FeatureScore& b) { return a.score > b.score; });
    return scores;
}

}  // namespace dfarm::analysis
