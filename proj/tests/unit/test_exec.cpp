#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "dfarm/doe/design.hpp"
#include "dfarm/error.hpp"
#include "dfarm/exec/controller.hpp"

using namespace dfarm;
using namespace dfarm::exec;

namespace {

doe::Design design(std::size_t n, std::uint64_t seed = 1) {
    return doe::lhs_design({{"a", doe::Continuous{0.0, 10.0}}, {"b", doe::Boolean{}}}, n, seed);
}

StopCriterion after_chunk(std::size_t chunk, std::size_t chunk_size) {
    return [=](const ResultTable& cur, const ResultTable& prev) {
        return !prev.empty() && cur.rows() == chunk * chunk_size;
    };
}

ResultTable table_with(std::vector<double> y) {
    std::vector<std::size_t> idx(y.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    ResultTable t(idx);
    t.add_column(DataColumn::numeric("m", std::move(y)));
    return t;
}

}  // namespace

TEST_CASE("scripted stop after chunk 2") {
    const auto d = design(1000);
    auto [res, rep] = run_batches(d, echo_runner, after_chunk(2, 100), 100);
    CHECK(rep.rows_executed == 200);
    CHECK(rep.chunks_executed == 2);
    CHECK(rep.stop_reason == StopReason::criterion_met);
    REQUIRE(rep.stop_chunk.has_value());
    CHECK(*rep.stop_chunk == 2);
    CHECK(res.rows() == 200);
}

TEST_CASE("never-stopping run exhausts the design with a short final chunk") {
    const auto d = design(1050);
    auto [res, rep] = run_batches(d, echo_runner, never_stop(), 100);
    CHECK(rep.rows_executed == 1050);
    CHECK(rep.chunks_executed == 11);
    CHECK(rep.stop_reason == StopReason::design_exhausted);
    CHECK_FALSE(rep.stop_chunk.has_value());
    CHECK(rep.chunk_seconds.size() == 11);
}

TEST_CASE("echo runner output is index-aligned with the design") {
    const auto d = design(250);
    auto [res, rep] = run_batches(d, echo_runner, never_stop(), 100);
    REQUIRE(res.rows() == 250);
    for (std::size_t i = 0; i < res.rows(); ++i) {
        CHECK(res.index()[i] == i);
        CHECK(res.column("a").numbers()[i] == std::get<double>(d.rows[i][0]));
        CHECK(res.column("b").numbers()[i] == (std::get<bool>(d.rows[i][1]) ? 1.0 : 0.0));
    }
}

TEST_CASE("stopped run is a prefix of the exhaustive run") {
    const auto d = design(700, 5);
    auto [full, r1] = run_batches(d, echo_runner, never_stop(), 100);
    for (std::size_t stop = 1; stop <= 6; ++stop) {
        auto [part, r2] = run_batches(d, echo_runner, after_chunk(stop, 100), 100);
        const std::size_t rows = stop == 1 ? 700 : stop * 100;  // chunk 1 can never stop
        CHECK(part == full.slice(0, rows));
        CHECK(r2.rows_executed == rows);
    }
}

TEST_CASE("mean convergence arithmetic") {
    auto crit = mean_convergence_criterion("m", 0.01, 1e-9);
    CHECK(crit(table_with({10.04}), table_with({10.00})));
    CHECK_FALSE(crit(table_with({0.1}), table_with({0.0})));
    CHECK_FALSE(crit(table_with({5.0}), ResultTable{}));
    auto strict = mean_convergence_criterion("m", 0.001, 1e-9);
    CHECK_FALSE(strict(table_with({10.04}), table_with({10.00})));
}

TEST_CASE("missing metric column is a config error") {
    auto crit = mean_convergence_criterion("absent", 0.01, 1e-9);
    CHECK_THROWS_AS(crit(table_with({1.0}), table_with({1.0})), ConfigError);
}

TEST_CASE("criterion exceptions surface with the chunk number") {
    const auto d = design(300);
    StopCriterion bad = [](const ResultTable&, const ResultTable& prev) -> bool {
        if (!prev.empty()) throw std::runtime_error("boom");
        return false;
    };
    try {
        run_batches(d, echo_runner, bad, 100);
        FAIL("expected CriterionError");
    } catch (const CriterionError& e) {
        CHECK(e.chunk() == 2);
    }
}

TEST_CASE("failed rows are kept and never enter the convergence mean") {
    const auto d = design(400);
    Runner flaky = [](const doe::DesignChunk& c) {
        ResultTable t = echo_runner(c);
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c.index(i) % 3 == 0) t.set_status(i, RowStatus::failed);
        return t;
    };
    auto [res, rep] = run_batches(d, flaky, never_stop(), 100);
    CHECK(res.rows() == 400);
    CHECK(res.ok_count() == 400 - 134);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < res.rows(); ++i)
        if (i % 3 != 0) sum += res.column("a").numbers()[i], ++n;
    CHECK(ok_mean(res, "a") == doctest::Approx(sum / static_cast<double>(n)).epsilon(1e-14));
}

TEST_CASE("runner contract violations are rejected") {
    const auto d = design(50);
    Runner short_runner = [](const doe::DesignChunk& c) { return echo_runner(c).slice(0, c.size() - 1); };
    CHECK_THROWS_AS(run_batches(d, short_runner, never_stop(), 10), ContractViolation);
    CHECK_THROWS(run_batches(d, echo_runner, never_stop(), 0));
}

TEST_CASE("deterministic runner gives identical repeated runs") {
    const auto d = design(333, 12);
    auto crit = mean_convergence_criterion("a", 0.02, 1e-9);
    auto [t1, r1] = run_batches(d, echo_runner, crit, 50);
    auto [t2, r2] = run_batches(d, echo_runner, crit, 50);
    CHECK(t1 == t2);
    CHECK(r1.rows_executed == r2.rows_executed);
    CHECK(r1.stop_chunk == r2.stop_chunk);
}

TEST_CASE("subprocess runner round-trips through an external command") {
    const std::string script = std::string(DFARM_TEST_DATA_DIR) + "/double_a.sh";
    {
        std::ofstream f(script);
        f << "#!/bin/sh\n"
             "awk -F, 'NR==1{print \"_index,twice\"; next}{print $1\",\"2*$2}' \"$1\" > \"$2\"\n";
    }
    REQUIRE(std::system(("chmod +x " + script).c_str()) == 0);
    const auto d = design(120);
    auto [res, rep] = run_batches(d, subprocess_runner(script), never_stop(), 50);
    REQUIRE(res.rows() == 120);
    for (std::size_t i = 0; i < 120; ++i)
        CHECK(res.column("twice").numbers()[i] == doctest::Approx(2.0 * std::get<double>(d.rows[i][0])));

    const std::string bare = std::string(DFARM_TEST_DATA_DIR) + "/square_a.sh";
    {
        std::ofstream f(bare);
        f << "#!/bin/sh\n"
             "awk -F, 'NR==1{print \"square\"; next}{print $2*$2}' \"$1\" > \"$2\"\n";
    }
    REQUIRE(std::system(("chmod +x " + bare).c_str()) == 0);
    auto [sq, rep1] = run_batches(d, subprocess_runner(bare), never_stop(), 50);
    REQUIRE(sq.rows() == 120);
    CHECK(sq.index()[119] == 119);
    CHECK(sq.column("square").numbers()[75] == doctest::Approx(std::pow(std::get<double>(d.rows[75][0]), 2)));

    auto [bad, rep2] = run_batches(d, subprocess_runner("false"), never_stop(), 50);
    CHECK(bad.rows() == 120);
    CHECK(bad.ok_count() == 0);
}
