#include "dfarm/doe/design.hpp"

#include "dfarm/error.hpp"
#include "dfarm/rng.hpp"

#include <cmath>
#include <numeric>

namespace dfarm::doe {

namespace {

// Stratified uniform draws on [lo, hi): one per stratum, strata permuted.
std::vector<double> stratified(double lo, double hi, std::size_t n, CounterRng& rng) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(std::span(perm));
    std::vector<double> out(n);
    const double width = hi - lo;
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        double v = lo + width * ((static_cast<double>(perm[i]) + u) / dn);
        if (v >= hi) v = std::nextafter(hi, lo);
        out[i] = v;
    }
    return out;
}

std::vector<Cell> balanced_levels(const std::vector<Cell>& levels, std::size_t n, CounterRng& rng) {
    std::vector<Cell> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(levels[i % levels.size()]);
    rng.shuffle(std::span(out));
    return out;
}

}  // namespace

Design lhs_design(std::vector<FactorSpec> factors, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw InvalidArgument("lhs_design: sample size must be at least 1");
    validate_factors(factors);

    const std::size_t k = factors.size();
    Design design{std::move(factors), std::vector<Row>(n, Row(k)), seed};

    for (std::size_t j = 0; j < k; ++j) {
        auto rng = CounterRng::substream(seed, j);
        const auto& kind = design.factors[j].kind;
        if (const auto* c = std::get_if<Continuous>(&kind)) {
            const auto values = stratified(c->lo, c->hi, n, rng);
            for (std::size_t i = 0; i < n; ++i) design.rows[i][j] = values[i];
        } else if (const auto* c = std::get_if<Integer>(&kind)) {
            const double lo = static_cast<double>(c->lo);
            const double hi = static_cast<double>(c->hi) + 1.0;
            const auto values = stratified(lo, hi, n, rng);
            for (std::size_t i = 0; i < n; ++i) {
                auto v = static_cast<std::int64_t>(std::floor(values[i]));
                design.rows[i][j] = std::min(std::max(v, c->lo), c->hi);
            }
        } else {
            std::vector<Cell> levels;
            if (const auto* c = std::get_if<Categorical>(&kind))
                levels.assign(c->levels.begin(), c->levels.end());
            else
                levels = {Cell{false}, Cell{true}};
            const auto values = balanced_levels(levels, n, rng);
            for (std::size_t i = 0; i < n; ++i) design.rows[i][j] = values[i];
        }
    }
    return design;
}

ValidationReport validate_design(const Design& design) {
    ValidationReport report;
    const std::size_t k = design.factors.size();
    for (std::size_t r = 0; r < design.rows.size(); ++r) {
        const auto& row = design.rows[r];
        if (row.size() != k) {
            report.violations.push_back({r, "", "row has " + std::to_string(row.size()) + " cells, expected " +
                                                    std::to_string(k)});
            continue;
        }
        for (std::size_t j = 0; j < k; ++j) {
            auto msg = domain_violation(design.factors[j], row[j]);
            if (!msg.empty()) report.violations.push_back({r, design.factors[j].name, std::move(msg)});
        }
    }
    return report;
}

std::size_t Design::factor_index(std::string_view name) const {
    for (std::size_t j = 0; j < factors.size(); ++j)
        if (factors[j].name == name) return j;
    throw ConfigError("design has no factor named '" + std::string(name) + "'");
}

std::size_t DesignChunk::factor_index(std::string_view name) const {
    for (std::size_t j = 0; j < factors.size(); ++j)
        if (factors[j].name == name) return j;
    throw ContractViolation("design chunk has no factor named '" + std::string(name) + "'");
}

}  // namespace dfarm::doe
