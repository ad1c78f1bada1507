#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dfarm::doe {

struct Continuous {
    double lo = 0.0;
    double hi = 1.0;
    bool operator==(const Continuous&) const = default;
};

struct Integer {
    std::int64_t lo = 0;
    std::int64_t hi = 1;
    bool operator==(const Integer&) const = default;
};

struct Categorical {
    std::vector<std::string> levels;
    bool operator==(const Categorical&) const = default;
};

struct Boolean {
    bool operator==(const Boolean&) const = default;
};

using FactorKind = std::variant<Continuous, Integer, Categorical, Boolean>;

struct FactorSpec {
    std::string name;
    FactorKind kind;

    bool operator==(const FactorSpec&) const = default;
};

// A design cell: continuous -> double, integer -> int64, categorical ->
// string, boolean -> bool.
using Cell = std::variant<double, std::int64_t, std::string, bool>;

const char* kind_name(const FactorKind& kind) noexcept;

// Throws DomainError naming the offending factor.
void validate_factor(const FactorSpec& factor);
// Validates each factor and checks that names are pairwise distinct.
void validate_factors(std::span<const FactorSpec> factors);

// Empty string when the cell lies in the factor's domain, otherwise a short
// description of the violation.
std::string domain_violation(const FactorSpec& factor, const Cell& cell);

// Numeric view of a cell (bool -> 0/1); throws for categorical cells.
double cell_as_real(const Cell& cell);

// `{ "factors": [ {"name": ..., "kind": "continuous", "lo": ..., "hi": ...}, ... ] }`
std::vector<FactorSpec> parse_factor_space(std::string_view json_text);
std::vector<FactorSpec> read_factor_space(const std::string& path);
std::string factor_space_to_json(std::span<const FactorSpec> factors);

}  // namespace dfarm::doe
