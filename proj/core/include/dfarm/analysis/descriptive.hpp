#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dfarm::analysis {

double mean(std::span<const double> x);
// Sample variance with n - 1 denominator; 0 for n < 2.
double variance(std::span<const double> x);
double stddev(std::span<const double> x);
double median(std::span<const double> x);

// Quantile by linear interpolation between order statistics ("type 7"):
// h = (n - 1) p, Q = x[floor h] + (h - floor h)(x[floor h + 1] - x[floor h]).
// `sorted` must be ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double p);
double quantile(std::span<const double> x, double p);

struct Ranking {
    std::vector<double> ranks;  // midranks, 1-based
    double tie_term = 0.0;      // sum over tie groups of t^3 - t
};

Ranking midranks(std::span<const double> x);

// Pearson correlation; 0 when either input has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace dfarm::analysis
