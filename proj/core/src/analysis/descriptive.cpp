#include "dfarm/analysis/descriptive.hpp"

#include "dfarm/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dfarm::analysis {

double mean(std::span<const double> x) {
    if (x.empty()) throw InvalidArgument("mean of an empty sample");
    // Two-pass to limit cancellation for offset data.
    double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    double correction = 0.0;
    for (double v : x) correction += v - m;
    return m + correction / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

double stddev(std::span<const double> x) { return std::sqrt(variance(x)); }

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw InvalidArgument("quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("quantile probability outside [0, 1]");
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

double quantile(std::span<const double> x, double p) {
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());
    return quantile_sorted(sorted, p);
}

double median(std::span<const double> x) { return quantile(x, 0.5); }

Ranking midranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    Ranking out;
    out.ranks.resize(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) out.ranks[order[t]] = rank;
        const double t = static_cast<double>(j - i + 1);
        out.tie_term += t * t * t - t;
        i = j + 1;
    }
    return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidArgument("pearson: length mismatch");
    if (x.size() < 2) return 0.0;
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;
    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidArgument("spearman: length mismatch");
    const auto rx = midranks(x), ry = midranks(y);
    return pearson(rx.ranks, ry.ranks);
}

}  // namespace dfarm::analysis
