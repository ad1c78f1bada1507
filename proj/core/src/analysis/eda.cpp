#include "dfarm/analysis/eda.hpp"

#include "dfarm/analysis/descriptive.hpp"
#include "dfarm/analysis/outliers.hpp"
#include "dfarm/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace dfarm::analysis {

Histogram freedman_diaconis(std::span<const double> values) {
    Histogram h;
    if (values.empty()) return h;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front(), hi = sorted.back();
    const double range = hi - lo;
    const double n = static_cast<double>(sorted.size());
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    const double width = 2.0 * iqr / std::cbrt(n);

    std::size_t bins = 1;
    if (range > 0.0 && width > 0.0)
        bins = static_cast<std::size_t>(std::clamp(std::ceil(range / width), 1.0, n));

    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b)
        h.edges[b] = lo + range * static_cast<double>(b) / static_cast<double>(bins);
    h.edges.back() = hi;
    h.counts.assign(bins, 0);
    for (double v : sorted) {
        std::size_t b = range > 0.0 ? static_cast<std::size_t>((v - lo) / range * static_cast<double>(bins)) : 0;
        h.counts[std::min(b, bins - 1)]++;
    }
    return h;
}

double cramers_v(const std::vector<std::optional<std::string>>& a, const std::vector<std::optional<std::string>>& b) {
    if (a.size() != b.size()) throw InvalidArgument("cramers_v: length mismatch");
    std::map<std::string, std::size_t> ra, cb;
    std::map<std::pair<std::string, std::string>, double> cells;
    double n = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i] || !b[i]) continue;
        ra[*a[i]]++;
        cb[*b[i]]++;
        cells[{*a[i], *b[i]}] += 1.0;
        n += 1.0;
    }
    const std::size_t r = ra.size(), c = cb.size();
    if (n == 0.0 || std::min(r, c) < 2) return 0.0;
    double chi2 = 0.0;
    for (const auto& [ka, na] : ra)
        for (const auto& [kb, nb] : cb) {
            const double expected = static_cast<double>(na) * static_cast<double>(nb) / n;
            const auto it = cells.find({ka, kb});
            const double observed = it == cells.end() ? 0.0 : it->second;
            chi2 += (observed - expected) * (observed - expected) / expected;
        }
    return std::clamp(std::sqrt(chi2 / (n * static_cast<double>(std::min(r, c) - 1))), 0.0, 1.0);
}

namespace {

AssociationMatrix numeric_association(std::span<const DataColumn* const> cols, bool ranks) {
    AssociationMatrix m;
    const std::size_t k = cols.size();
    m.values.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        m.names.push_back(cols[i]->name());
        m.values[i][i] = 1.0;
        for (std::size_t j = 0; j < i; ++j) {
            const auto x = cols[i]->numbers(), y = cols[j]->numbers();
            std::vector<double> xs, ys;
            for (std::size_t r = 0; r < x.size(); ++r)
                if (!std::isnan(x[r]) && !std::isnan(y[r])) {
                    xs.push_back(x[r]);
                    ys.push_back(y[r]);
                }
            const double v = ranks ? spearman(xs, ys) : pearson(xs, ys);
            m.values[i][j] = m.values[j][i] = v;
        }
    }
    return m;
}

}  // namespace

EdaReport eda_summary(std::span<const DataColumn> table) {
    if (table.empty()) throw InvalidArgument("eda_summary needs at least one column");
    EdaReport report;
    std::vector<const DataColumn*> numeric_cols, categorical_cols;
    const double nan = std::nan("");

    for (const auto& col : table) {
        if (col.is_numeric()) {
            numeric_cols.push_back(&col);
            NumericSummary s;
            s.name = col.name();
            auto values = col.present_numbers();
            s.count = values.size();
            s.missing = col.size() - values.size();
            if (values.empty()) {
                s.mean = s.sd = s.min = s.q1 = s.median = s.q3 = s.max = nan;
            } else {
                std::vector<double> sorted = values;
                std::sort(sorted.begin(), sorted.end());
                s.mean = mean(values);
                s.sd = values.size() > 1 ? stddev(values) : nan;
                s.min = sorted.front();
                s.max = sorted.back();
                s.q1 = quantile_sorted(sorted, 0.25);
                s.median = quantile_sorted(sorted, 0.5);
                s.q3 = quantile_sorted(sorted, 0.75);
                if (values.size() >= 4) s.iqr_outliers = detect_outliers(values, OutlierMethod::iqr, 1.5).flagged.size();
                s.histogram = freedman_diaconis(values);
            }
            report.numeric.push_back(std::move(s));
        } else {
            categorical_cols.push_back(&col);
            CategoricalSummary s;
            s.name = col.name();
            std::unordered_map<std::string, std::size_t> pos;
            for (const auto& label : col.labels()) {
                if (!label) {
                    ++s.missing;
                    continue;
                }
                ++s.count;
                const auto [it, inserted] = pos.try_emplace(*label, s.levels.size());
                if (inserted) s.levels.push_back({*label, 0, 0.0});
                s.levels[it->second].count++;
            }
            for (auto& l : s.levels) l.share = static_cast<double>(l.count) / static_cast<double>(s.count);
            report.categorical.push_back(std::move(s));
        }
    }

    report.pearson = numeric_association(numeric_cols, false);
    report.spearman = numeric_association(numeric_cols, true);

    const std::size_t k = categorical_cols.size();
    report.cramers_v.values.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        report.cramers_v.names.push_back(categorical_cols[i]->name());
        report.cramers_v.values[i][i] = 1.0;
        for (std::size_t j = 0; j < i; ++j) {
            const double v = cramers_v(categorical_cols[i]->labels(), categorical_cols[j]->labels());
            report.cramers_v.values[i][j] = report.cramers_v.values[j][i] = v;
        }
    }
    return report;
}

}  // namespace dfarm::analysis
