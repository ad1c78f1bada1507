#pragma once

#include "dfarm/table.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dfarm::analysis {

enum class Family { normal, uniform, exponential, chi_squared, beta };

inline constexpr std::array<Family, 5> kAllFamilies{Family::normal, Family::uniform, Family::exponential,
                                                     Family::chi_squared, Family::beta};

const char* to_string(Family family) noexcept;
Family family_from_string(std::string_view name);

struct Parameter {
    std::string name;
    double value = 0.0;
};

struct FamilyFit {
    Family family = Family::normal;
    std::vector<Parameter> parameters;
    double ks_statistic = 1.0;
    // Asymptotic Kolmogorov p-value. Parameters come from the same data, so
    // it overstates the fit; only ks_statistic is used for ranking.
    double p_indicative = 0.0;

    double parameter(std::string_view name) const;
    double cdf(double x) const;
};

struct FitOptions {
    // Min-max rescale into (0, 1) before fitting beta.
    bool rescale_beta = false;
};

struct FitReport {
    std::size_t n = 0;
    std::vector<FamilyFit> fits;   // candidate order
    std::vector<Family> ranking;   // ascending K-S D, ties by candidate order
    bool beta_rescaled = false;
    double rescale_offset = 0.0;   // u = (x - offset) / scale
    double rescale_scale = 1.0;

    const FamilyFit& fit(Family family) const;
};

// Families whose support covers the sample: exponential and chi-squared need
// non-negative data with a positive mean, beta needs data inside (0, 1).
std::vector<Family> applicable_families(std::span<const double> sample);

// Estimates: normal and exponential by MLE, uniform by (min, max),
// chi-squared df by the sample mean, beta by the method of moments.
FitReport fit_distributions(std::span<const double> sample, std::span<const Family> candidates,
                            FitOptions options = {});
FitReport fit_distributions(const DataColumn& sample, std::span<const Family> candidates, FitOptions options = {});

// max_i max(i/n - F(x_i), F(x_i) - (i - 1)/n) over ascending `sorted`.
template <class Cdf>
double ks_statistic(std::span<const double> sorted, Cdf&& cdf) {
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        const double hi = static_cast<double>(i + 1) / n - f;
        const double lo = f - static_cast<double>(i) / n;
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

}  // namespace dfarm::analysis
