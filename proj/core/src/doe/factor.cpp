#include "dfarm/doe/factor.hpp"

#include "dfarm/csv.hpp"
#include "dfarm/error.hpp"

#include <json.hpp>

#include <cmath>
#include <unordered_set>

namespace dfarm::doe {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

const char* kind_name(const FactorKind& kind) noexcept {
    return std::visit(overloaded{[](const Continuous&) { return "continuous"; },
                                 [](const Integer&) { return "integer"; },
                                 [](const Categorical&) { return "categorical"; },
                                 [](const Boolean&) { return "boolean"; }},
                      kind);
}

void validate_factor(const FactorSpec& factor) {
    const auto fail = [&](const std::string& why) {
        throw DomainError("factor '" + factor.name + "': " + why);
    };
    if (factor.name.empty()) throw DomainError("factor with empty name");
    std::visit(overloaded{[&](const Continuous& c) {
                              if (!std::isfinite(c.lo) || !std::isfinite(c.hi)) fail("bounds must be finite");
                              if (!(c.lo < c.hi)) fail("requires lo < hi");
                          },
                          [&](const Integer& c) {
                              if (!(c.lo < c.hi)) fail("requires lo < hi");
                          },
                          [&](const Categorical& c) {
                              if (c.levels.empty()) fail("needs at least one level");
                              std::unordered_set<std::string> seen;
                              for (const auto& l : c.levels)
                                  if (!seen.insert(l).second) fail("duplicate level '" + l + "'");
                          },
                          [](const Boolean&) {}},
               factor.kind);
}

void validate_factors(std::span<const FactorSpec> factors) {
    std::unordered_set<std::string> names;
    for (const auto& f : factors) {
        validate_factor(f);
        if (!names.insert(f.name).second) throw DomainError("factor '" + f.name + "' declared twice");
    }
}

std::string domain_violation(const FactorSpec& factor, const Cell& cell) {
    return std::visit(
        overloaded{
            [&](const Continuous& c) -> std::string {
                const auto* v = std::get_if<double>(&cell);
                if (!v) return "expected a real value";
                if (!std::isfinite(*v) || *v < c.lo || *v > c.hi)
                    return "value " + csv::format_short(*v, 17) + " outside [" + csv::format_short(c.lo, 17) +
                           ", " + csv::format_short(c.hi, 17) + "]";
                return {};
            },
            [&](const Integer& c) -> std::string {
                const auto* v = std::get_if<std::int64_t>(&cell);
                if (!v) return "expected an integer value";
                if (*v < c.lo || *v > c.hi)
                    return "value " + std::to_string(*v) + " outside [" + std::to_string(c.lo) + ", " +
                           std::to_string(c.hi) + "]";
                return {};
            },
            [&](const Categorical& c) -> std::string {
                const auto* v = std::get_if<std::string>(&cell);
                if (!v) return "expected a level name";
                for (const auto& l : c.levels)
                    if (l == *v) return {};
                return "unknown level '" + *v + "'";
            },
            [&](const Boolean&) -> std::string {
                return std::holds_alternative<bool>(cell) ? std::string{} : std::string("expected a boolean");
            }},
        factor.kind);
}

double cell_as_real(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
    if (const auto* b = std::get_if<bool>(&cell)) return *b ? 1.0 : 0.0;
    throw InvalidArgument("categorical cell has no numeric value");
}

std::vector<FactorSpec> parse_factor_space(std::string_view json_text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("factor space: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("factors") || !doc["factors"].is_array())
        throw ConfigError("factor space: expected an object with a \"factors\" array");

    std::vector<FactorSpec> factors;
    for (const auto& item : doc["factors"]) {
        try {
            FactorSpec f;
            f.name = item.at("name").get<std::string>();
            const auto kind = item.at("kind").get<std::string>();
            if (kind == "continuous")
                f.kind = Continuous{item.at("lo").get<double>(), item.at("hi").get<double>()};
            else if (kind == "integer")
                f.kind = Integer{item.at("lo").get<std::int64_t>(), item.at("hi").get<std::int64_t>()};
            else if (kind == "categorical")
                f.kind = Categorical{item.at("levels").get<std::vector<std::string>>()};
            else if (kind == "boolean")
                f.kind = Boolean{};
            else
                throw ConfigError("factor '" + f.name + "': unknown kind '" + kind + "'");
            factors.push_back(std::move(f));
        } catch (const json::exception& e) {
            throw ConfigError(std::string("factor space: ") + e.what());
        }
    }
    validate_factors(factors);
    return factors;
}

std::vector<FactorSpec> read_factor_space(const std::string& path) {
    return parse_factor_space(csv::read_text(path));
}

std::string factor_space_to_json(std::span<const FactorSpec> factors) {
    using nlohmann::json;
    json arr = json::array();
    for (const auto& f : factors) {
        json item{{"name", f.name}, {"kind", kind_name(f.kind)}};
        std::visit(overloaded{[&](const Continuous& c) {
                                  item["lo"] = c.lo;
                                  item["hi"] = c.hi;
                              },
                              [&](const Integer& c) {
                                  item["lo"] = c.lo;
                                  item["hi"] = c.hi;
                              },
                              [&](const Categorical& c) { item["levels"] = c.levels; },
                              [](const Boolean&) {}},
                   f.kind);
        arr.push_back(std::move(item));
    }
    return json{{"factors", arr}}.dump(2) + "\n";
}

}  // namespace dfarm::doe
