#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "dfarm/doe/design.hpp"
#include "dfarm/doe/factor.hpp"
#include "dfarm/error.hpp"

using namespace dfarm;
using namespace dfarm::doe;

namespace {

std::vector<FactorSpec> mixed_space() {
    return {{"x", Continuous{0.0, 1.0}},
            {"y", Continuous{-5.0, 20.0}},
            {"n", Integer{1, 4}},
            {"c", Categorical{{"A", "B", "C"}}},
            {"flag", Boolean{}}};
}

void check_strata(const Design& d, std::size_t col, double lo, double hi) {
    const std::size_t n = d.size();
    std::vector<int> hits(n, 0);
    for (const auto& row : d.rows) {
        const double v = std::get<double>(row[col]);
        const auto s = static_cast<std::size_t>(std::floor((v - lo) / (hi - lo) * static_cast<double>(n)));
        REQUIRE(s < n);
        ++hits[s];
    }
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}

template <class T>
std::map<T, int> counts(const Design& d, std::size_t col) {
    std::map<T, int> m;
    for (const auto& row : d.rows) ++m[std::get<T>(row[col])];
    return m;
}

}  // namespace

TEST_CASE("single continuous factor, n=4: one point per quarter") {
    const Design d = lhs_design({{"x", Continuous{0.0, 1.0}}}, 4, 42);
    REQUIRE(d.size() == 4);
    check_strata(d, 0, 0.0, 1.0);
}

TEST_CASE("categorical factor with 3 levels, n=6: each level twice") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Design d = lhs_design({{"c", Categorical{{"A", "B", "C"}}}}, 6, seed);
        for (const auto& [level, count] : counts<std::string>(d, 0)) CHECK(count == 2);
    }
}

TEST_CASE("seven factors, n=3729: in-domain design") {
    std::vector<FactorSpec> f = mixed_space();
    f.push_back({"z", Continuous{100.0, 200.0}});
    f.push_back({"m", Integer{-3, 3}});
    const Design d = lhs_design(f, 3729, 7);
    CHECK(d.size() == 3729);
    CHECK(d.rows.front().size() == 7);
    CHECK(validate_design(d).ok());
}

TEST_CASE("stratification, balance and integer coverage across n") {
    for (std::size_t n : {10u, 100u, 1000u}) {
        const Design d = lhs_design(mixed_space(), n, 11 + n);
        check_strata(d, 0, 0.0, 1.0);
        check_strata(d, 1, -5.0, 20.0);
        auto cats = counts<std::string>(d, 3);
        auto bools = counts<bool>(d, 4);
        auto ints = counts<std::int64_t>(d, 2);
        auto spread = [](const auto& m) {
            int lo = INT32_MAX, hi = 0;
            for (const auto& [k, v] : m) lo = std::min(lo, v), hi = std::max(hi, v);
            return hi - lo;
        };
        CHECK(cats.size() == 3);
        CHECK(spread(cats) <= 1);
        CHECK(spread(bools) <= 1);
        CHECK(ints.size() == 4);
        CHECK(spread(ints) <= 1);
    }
}

TEST_CASE("identical inputs give byte-identical designs") {
    CHECK(design_to_csv(lhs_design(mixed_space(), 50, 3)) == design_to_csv(lhs_design(mixed_space(), 50, 3)));
    CHECK(design_to_csv(lhs_design(mixed_space(), 50, 3)) != design_to_csv(lhs_design(mixed_space(), 50, 4)));
}

TEST_CASE("appending a factor leaves earlier columns unchanged") {
    auto f = mixed_space();
    const Design base = lhs_design(f, 40, 99);
    f.push_back({"extra", Continuous{0.0, 9.0}});
    const Design more = lhs_design(f, 40, 99);
    for (std::size_t r = 0; r < 40; ++r)
        for (std::size_t c = 0; c < base.factors.size(); ++c) CHECK(base.rows[r][c] == more.rows[r][c]);
}

TEST_CASE("validate_design reports out-of-domain cells") {
    Design d = lhs_design({{"x", Continuous{0.0, 1.0}}}, 5, 1);
    d.rows[3][0] = 1.5;
    auto rep = validate_design(d);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].row == 3);
    CHECK(rep.violations[0].factor == "x");

    Design c = lhs_design({{"c", Categorical{{"A", "B", "C"}}}}, 3, 1);
    c.rows[0][0] = std::string("D");
    rep = validate_design(c);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].message.find("D") != std::string::npos);
}

TEST_CASE("design csv round-trip and boolean tokens") {
    const Design d = lhs_design(mixed_space(), 25, 8);
    const std::string text = design_to_csv(d);
    CHECK(design_from_csv(text, mixed_space()) == d);
    CHECK(text.find("true") != std::string::npos);
    CHECK(text.find("false") != std::string::npos);
}

TEST_CASE("design csv errors carry the line") {
    try {
        design_from_csv("", {{"x", Continuous{0.0, 1.0}}});
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
    try {
        design_from_csv("x\n0.5\nabc\n", {{"x", Continuous{0.0, 1.0}}});
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(design_from_csv("y\n0.5\n", {{"x", Continuous{0.0, 1.0}}}), ParseError);
}

TEST_CASE("factor validation") {
    CHECK_THROWS_AS(validate_factor({"x", Continuous{1.0, 1.0}}), DomainError);
    CHECK_THROWS_AS(validate_factor({"n", Integer{3, 2}}), DomainError);
    CHECK_THROWS_AS(validate_factor({"c", Categorical{{}}}), DomainError);
    CHECK_THROWS_AS(validate_factor({"c", Categorical{{"A", "A"}}}), DomainError);
    const std::vector<FactorSpec> dup{{"x", Continuous{}}, {"x", Boolean{}}};
    CHECK_THROWS(validate_factors(dup));
    CHECK_THROWS(lhs_design(mixed_space(), 0, 1));
}

TEST_CASE("factor space json round-trip") {
    const auto f = mixed_space();
    CHECK(parse_factor_space(factor_space_to_json(f)) == f);
    CHECK_THROWS(parse_factor_space(R"({"factors":[{"name":"x","kind":"weird"}]})"));
}
