#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "dfarm/csv.hpp"
#include "dfarm/error.hpp"
#include "dfarm/rng.hpp"
#include "dfarm/table.hpp"

using namespace dfarm;

TEST_CASE("rng matches the SplitMix64 reference sequence") {
    // Reference outputs of SplitMix64 seeded with 1234567.
    CounterRng rng(1234567);
    CHECK(rng() == 6457827717110365317ULL);
    CHECK(rng() == 3203168211198807973ULL);
    CHECK(rng() == 9817491932198370423ULL);
    CHECK(rng.counter() == 3);
}

TEST_CASE("rng streams are reproducible and substreams differ") {
    CounterRng a = CounterRng::substream(42, 3);
    CounterRng b = CounterRng::substream(42, 3);
    CounterRng c = CounterRng::substream(42, 4);
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        CHECK(x == b());
        CHECK(x != c());
    }
    CHECK(CounterRng::substream(1, 2, 3).key() == CounterRng::derive_key(CounterRng::derive_key(1, 2), 3));
}

TEST_CASE("rng uniform, below and normal stay in range") {
    CounterRng rng(9);
    double sum = 0.0, sq = 0.0;
    std::vector<int> counts(7, 0);
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        CHECK_MESSAGE((u >= 0.0 && u < 1.0), u);
        ++counts[rng.below(7)];
        const double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    for (int c : counts) CHECK(std::abs(c - n / 7.0) < 5.0 * std::sqrt(n / 7.0));
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("rng shuffle is a permutation") {
    std::vector<int> v(50);
    std::iota(v.begin(), v.end(), 0);
    CounterRng rng(5);
    rng.shuffle(std::span<int>(v));
    CHECK(std::set<int>(v.begin(), v.end()).size() == 50);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted.front() == 0);
    CHECK(sorted.back() == 49);
}

TEST_CASE("csv parses quotes, CRLF and multi-line fields") {
    const auto recs = csv::parse("a,b\r\n\"x,1\",\"he said \"\"hi\"\"\"\n\"multi\nline\",2\n");
    REQUIRE(recs.size() == 3);
    CHECK(recs[1].fields[0] == "x,1");
    CHECK(recs[1].fields[1] == "he said \"hi\"");
    CHECK(recs[2].fields[0] == "multi\nline");
    CHECK(recs[2].line == 3);
    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a,b") == "\"a,b\"");
}

TEST_CASE("csv reals round-trip through 17 digits") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6378137.0, 1e300}) {
        double back = 0.0;
        REQUIRE(csv::parse_real(csv::format_real(v), back));
        CHECK(back == v);
    }
    double junk = 0.0;
    CHECK_FALSE(csv::parse_real("1.5x", junk));
    CHECK_FALSE(csv::parse_real("nan", junk));
}

TEST_CASE("result table csv round-trip keeps status, index and missing cells") {
    ResultTable t({3, 4, 5}, {RowStatus::ok, RowStatus::failed, RowStatus::ok});
    t.add_column(DataColumn::numeric("y", {1.5, std::nan(""), -2.0}));
    t.add_column(DataColumn::categorical("c", std::vector<std::optional<std::string>>{"a", std::nullopt, "b,c"}));
    const ResultTable back = ResultTable::from_csv(t.to_csv());
    CHECK(back == t);
    CHECK(back.ok_count() == 2);
    CHECK(back.ok_rows().index() == std::vector<std::size_t>{3, 5});
}

TEST_CASE("result table append pads missing columns and rejects kind mismatch") {
    ResultTable a({0, 1});
    a.add_column(DataColumn::numeric("x", {1, 2}));
    ResultTable b({2});
    b.add_column(DataColumn::numeric("y", {7}));
    a.append(b);
    CHECK(a.rows() == 3);
    CHECK(a.column("x").is_missing(2));
    CHECK(a.column("y").is_missing(0));
    ResultTable c({3});
    c.add_column(DataColumn::categorical("x", std::vector<std::string>{"q"}));
    CHECK_THROWS_AS(a.append(c), ContractViolation);
}

TEST_CASE("result table validation catches duplicate indices") {
    ResultTable t({1, 1});
    CHECK_THROWS_AS(t.validate(), ContractViolation);
}

TEST_CASE("result table csv without reserved columns gets defaults") {
    const auto t = ResultTable::from_csv("x,label\n1,a\n2,b\n");
    CHECK(t.index() == std::vector<std::size_t>{0, 1});
    CHECK(t.ok_count() == 2);
    CHECK(t.column("x").is_numeric());
    CHECK_FALSE(t.column("label").is_numeric());
}
