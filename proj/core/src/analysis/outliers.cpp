#include "dfarm/analysis/outliers.hpp"

#include "dfarm/analysis/descriptive.hpp"
#include "dfarm/error.hpp"

#include <algorithm>
#include <cmath>

namespace dfarm::analysis {

const char* to_string(OutlierMethod m) noexcept { return m == OutlierMethod::zscore ? "zscore" : "iqr"; }

OutlierMethod outlier_method_from_string(std::string_view text) {
    if (text == "zscore") return OutlierMethod::zscore;
    if (text == "iqr") return OutlierMethod::iqr;
    throw InvalidArgument("unknown outlier method '" + std::string(text) + "'");
}

double default_outlier_k(OutlierMethod m) noexcept { return m == OutlierMethod::zscore ? 3.0 : 1.5; }

OutlierReport detect_outliers(std::span<const double> sample, OutlierMethod method, double k) {
    if (sample.size() < 4) throw InvalidArgument("outlier detection needs at least 4 observations");
    if (!(k > 0.0)) throw InvalidArgument("outlier multiplier must be positive");
    OutlierReport report;
    report.method = method;
    report.k = k;
    report.n = sample.size();

    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    report.q1 = quantile_sorted(sorted, 0.25);
    report.q3 = quantile_sorted(sorted, 0.75);

    if (method == OutlierMethod::zscore) {
        report.center = mean(sample);
        report.scale = stddev(sample);
        report.lower = report.center - k * report.scale;
        report.upper = report.center + k * report.scale;
        if (!(report.scale > 0.0)) {
            report.degenerate = true;
            report.note = "zero standard deviation; no values flagged";
        }
    } else {
        report.center = quantile_sorted(sorted, 0.5);
        report.scale = report.q3 - report.q1;
        report.lower = report.q1 - k * report.scale;
        report.upper = report.q3 + k * report.scale;
        if (!(report.scale > 0.0)) {
            report.degenerate = true;
            report.note = "zero interquartile range; no values flagged";
        }
    }
    if (!report.degenerate)
        for (std::size_t i = 0; i < sample.size(); ++i)
            if (sample[i] < report.lower || sample[i] > report.upper) report.flagged.push_back(i);
    return report;
}

OutlierReport detect_outliers(std::span<const double> sample, OutlierMethod method) {
    return detect_outliers(sample, method, default_outlier_k(method));
}

OutlierReport detect_outliers(const DataColumn& column, OutlierMethod method, double k) {
    const auto values = column.numbers();
    std::vector<double> present;
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isnan(values[i])) {
            present.push_back(values[i]);
            rows.push_back(i);
        }
    auto report = detect_outliers(present, method, k);
    for (auto& idx : report.flagged) idx = rows[idx];
    return report;
}

}  // namespace dfarm::analysis
