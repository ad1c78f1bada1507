#include "dfarm/analysis/fit.hpp"

#include "dfarm/analysis/descriptive.hpp"
#include "dfarm/analysis/special.hpp"
#include "dfarm/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dfarm::analysis {

const char* to_string(Family family) noexcept {
    switch (family) {
    case Family::normal: return "normal";
    case Family::uniform: return "uniform";
    case Family::exponential: return "exponential";
    case Family::chi_squared: return "chi_squared";
    case Family::beta: return "beta";
    }
    return "unknown";
}

Family family_from_string(std::string_view name) {
    for (Family f : kAllFamilies)
        if (name == to_string(f)) return f;
    throw InvalidArgument("unknown distribution family '" + std::string(name) + "'");
}

double FamilyFit::parameter(std::string_view name) const {
    for (const auto& p : parameters)
        if (p.name == name) return p.value;
    throw InvalidArgument("fit has no parameter '" + std::string(name) + "'");
}

double FamilyFit::cdf(double x) const {
    switch (family) {
    case Family::normal: return normal_cdf((x - parameter("mean")) / parameter("sd"));
    case Family::uniform: {
        const double lo = parameter("lo"), hi = parameter("hi");
        return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
    }
    case Family::exponential: return x <= 0.0 ? 0.0 : -std::expm1(-parameter("rate") * x);
    case Family::chi_squared: return chi_squared_cdf(x, parameter("df"));
    case Family::beta:
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return regularized_beta(parameter("alpha"), parameter("beta"), x);
    }
    return 0.0;
}

const FamilyFit& FitReport::fit(Family family) const {
    for (const auto& f : fits)
        if (f.family == family) return f;
    throw InvalidArgument(std::string("family ") + to_string(family) + " was not fitted");
}

std::vector<Family> applicable_families(std::span<const double> sample) {
    std::vector<Family> out{Family::normal, Family::uniform};
    if (sample.empty()) return out;
    const auto [lo, hi] = std::minmax_element(sample.begin(), sample.end());
    if (*lo >= 0.0 && *hi > 0.0) {
        out.push_back(Family::exponential);
        out.push_back(Family::chi_squared);
    }
    if (*lo > 0.0 && *hi < 1.0) out.push_back(Family::beta);
    return out;
}

namespace {

double population_variance(std::span<const double> x, double m) {
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size());
}

}  // namespace

FitReport fit_distributions(std::span<const double> sample, std::span<const Family> candidates, FitOptions options) {
    if (candidates.empty()) throw InvalidArgument("fit_distributions needs at least one candidate family");
    if (sample.size() < 20) throw InvalidArgument("fit_distributions needs at least 20 observations");
    for (double v : sample)
        if (!std::isfinite(v)) throw InvalidArgument("fit_distributions: sample holds a non-finite value");

    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    const double m = mean(sorted);
    const double var = population_variance(sorted, m);
    if (!(var > 0.0)) throw DegenerateSample("fit_distributions: sample has zero variance");
    const double lo = sorted.front(), hi = sorted.back();

    FitReport report;
    report.n = sorted.size();
    for (Family family : candidates) {
        FamilyFit fit;
        fit.family = family;
        std::span<const double> data = sorted;
        std::vector<double> rescaled;
        switch (family) {
        case Family::normal:
            fit.parameters = {{"mean", m}, {"sd", std::sqrt(var)}};
            break;
        case Family::uniform:
            fit.parameters = {{"lo", lo}, {"hi", hi}};
            break;
        case Family::exponential:
            if (lo < 0.0 || m <= 0.0) throw DomainError("exponential fit needs non-negative data with positive mean");
            fit.parameters = {{"rate", 1.0 / m}};
            break;
        case Family::chi_squared:
            if (lo < 0.0 || m <= 0.0) throw DomainError("chi-squared fit needs non-negative data with positive mean");
            fit.parameters = {{"df", m}};
            break;
        case Family::beta: {
            double bm = m, bv = var;
            if (options.rescale_beta) {
                const double range = hi - lo;
                report.beta_rescaled = true;
                report.rescale_offset = lo - range / n;
                report.rescale_scale = range + 2.0 * range / n;
                rescaled.reserve(sorted.size());
                for (double v : sorted) rescaled.push_back((v - report.rescale_offset) / report.rescale_scale);
                data = rescaled;
                bm = mean(rescaled);
                bv = population_variance(rescaled, bm);
            } else if (lo <= 0.0 || hi >= 1.0) {
                throw DomainError("beta fit needs data strictly inside (0, 1); enable rescaling");
            }
            const double common = bm * (1.0 - bm) / bv - 1.0;
            if (!(common > 0.0)) throw DomainError("beta moments are infeasible for this sample");
            fit.parameters = {{"alpha", bm * common}, {"beta", (1.0 - bm) * common}};
            break;
        }
        }
        fit.ks_statistic = std::clamp(ks_statistic(data, [&](double x) { return fit.cdf(x); }), 0.0, 1.0);
        const double rn = std::sqrt(n);
        fit.p_indicative = kolmogorov_sf((rn + 0.12 + 0.11 / rn) * fit.ks_statistic);
        report.fits.push_back(std::move(fit));
    }

    std::vector<std::size_t> order(report.fits.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return report.fits[a].ks_statistic < report.fits[b].ks_statistic;
    });
    for (std::size_t i : order) report.ranking.push_back(report.fits[i].family);
    return report;
}

FitReport fit_distributions(const DataColumn& sample, std::span<const Family> candidates, FitOptions options) {
    return fit_distributions(sample.present_numbers(), candidates, options);
}

}  // namespace dfarm::analysis
