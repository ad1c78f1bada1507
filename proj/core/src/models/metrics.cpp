#include "dfarm/models/metrics.hpp"

#include "dfarm/error.hpp"

#include <cmath>
#include <map>

namespace dfarm::models {

ClassificationMetrics classification_metrics(std::span<const std::string> predicted, std::span<const std::string> truth) {
    if (predicted.size() != truth.size()) throw InvalidArgument("predictions and truth differ in length");
    if (truth.empty()) throw InvalidArgument("metrics need at least one row");

    struct Counts {
        std::size_t tp = 0, fp = 0, fn = 0;
    };
    std::map<std::string, Counts> counts;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (predicted[i] == truth[i]) {
            ++correct;
            counts[truth[i]].tp++;
        } else {
            counts[predicted[i]].fp++;
            counts[truth[i]].fn++;
        }
    }

    ClassificationMetrics m;
    m.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
    for (const auto& [label, c] : counts) {
        ClassMetrics cm;
        cm.label = label;
        cm.support = c.tp + c.fn;
        cm.precision = c.tp + c.fp ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 0.0;
        cm.recall = c.tp + c.fn ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) : 0.0;
        cm.f1 = cm.precision + cm.recall > 0.0 ? 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall) : 0.0;
        m.macro_precision += cm.precision;
        m.macro_recall += cm.recall;
        m.macro_f1 += cm.f1;
        m.per_class.push_back(cm);
    }
    const double k = static_cast<double>(m.per_class.size());
    m.macro_precision /= k;
    m.macro_recall /= k;
    m.macro_f1 /= k;
    return m;
}

RegressionMetrics regression_metrics(std::span<const double> predicted, std::span<const double> truth) {
    if (predicted.size() != truth.size()) throw InvalidArgument("predictions and truth differ in length");
    if (truth.empty()) throw InvalidArgument("metrics need at least one row");
    const double n = static_cast<double>(truth.size());
    double mean = 0.0;
    for (double y : truth) mean += y;
    mean /= n;
    double ss_res = 0.0, ss_tot = 0.0, abs_sum = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double r = truth[i] - predicted[i];
        ss_res += r * r;
        abs_sum += std::abs(r);
        ss_tot += (truth[i] - mean) * (truth[i] - mean);
    }
    RegressionMetrics m;
    m.mse = ss_res / n;
    m.mae = abs_sum / n;
    if (ss_tot > 0.0) m.r2 = 1.0 - ss_res / ss_tot;
    return m;
}

}  // namespace dfarm::models
