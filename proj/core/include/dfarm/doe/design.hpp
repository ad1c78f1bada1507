#pragma once

#include "dfarm/doe/factor.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dfarm::doe {

using Row = std::vector<Cell>;

struct Design {
    std::vector<FactorSpec> factors;
    std::vector<Row> rows;
    std::uint64_t seed = 0;

    std::size_t size() const noexcept { return rows.size(); }
    std::size_t factor_index(std::string_view name) const;  // throws ConfigError

    // The seed is provenance, not content: designs compare equal on factors
    // and cells.
    bool operator==(const Design& other) const {
        return factors == other.factors && rows == other.rows;
    }
};

// Latin hypercube design.
//
// Continuous factors: [lo, hi) is cut into n equal strata and each stratum
// receives exactly one point, placed uniformly inside it; the stratum order is
// an independent random permutation per factor. Integer factors stratify
// [lo, hi + 1) and take the floor. Categorical and boolean factors cycle
// through their levels, so level counts differ by at most one, then shuffle.
//
// Column j draws only from CounterRng::substream(seed, j), so appending a
// factor leaves earlier columns unchanged.
Design lhs_design(std::vector<FactorSpec> factors, std::size_t n, std::uint64_t seed);

struct Violation {
    std::size_t row;
    std::string factor;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_design(const Design& design);

// Design CSV: header = factor names, booleans as `true`/`false`, reals with
// 17 significant digits.
std::string design_to_csv(const Design& design);
// Parses cells against the declared factors; the header must list exactly
// the factor names in order. Errors carry the 1-based line number.
Design design_from_csv(std::string_view text, std::vector<FactorSpec> factors);

void write_design(const Design& design, const std::string& path);
Design read_design(const std::string& path, std::vector<FactorSpec> factors);

// Contiguous block of design rows handed to a runner. Row i of the chunk is
// design row first_index + i.
struct DesignChunk {
    std::span<const FactorSpec> factors;
    std::span<const Row> rows;
    std::size_t first_index = 0;

    std::size_t size() const noexcept { return rows.size(); }
    std::size_t index(std::size_t i) const noexcept { return first_index + i; }
    std::size_t factor_index(std::string_view name) const;
};

}  // namespace dfarm::doe
