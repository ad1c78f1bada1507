#include <cmath>
#include <vector>

#include "doctest.h"
#include "dfarm/doe/design.hpp"
#include "dfarm/error.hpp"
#include "dfarm/exec/controller.hpp"
#include "dfarm/simkit/navsim.hpp"
#include "dfarm/simkit/surface.hpp"

using namespace dfarm;
using namespace dfarm::simkit;

namespace {

doe::Design flights(std::size_t n, std::uint64_t seed) { return doe::lhs_design(navigation_factors(), n, seed); }

}  // namespace

TEST_CASE("density ratio and time of flight") {
    CHECK(isa_density_ratio(0.0) == 1.0);
    CHECK(isa_density_ratio(35000.0) < isa_density_ratio(10000.0));
    const FuelModelParams p = calibrate();
    CHECK(time_of_flight(500.0, p) == doctest::Approx(4200.0).epsilon(1e-15));
    for (double v = 350.0; v < 550.0; v += 10.0) CHECK(time_of_flight(v + 10.0, p) < time_of_flight(v, p));
}

TEST_CASE("calibration hits both anchors") {
    const FuelModelParams p = calibrate();
    CHECK(p.a > 0.0);
    CHECK(p.b > 0.0);
    CHECK(std::abs(total_fuel(525.0, 10000.0, p) - 1800.0) < 1e-6);
    CHECK(std::abs(total_fuel(425.0, 27500.0, p) - 1000.0) < 1e-6);
}

TEST_CASE("fuel flow shape") {
    const FuelModelParams p = calibrate();
    for (double v = 450.0; v < 550.0; v += 1.0) CHECK(fuel_flow(v + 1.0, 10000.0, p) > fuel_flow(v, 10000.0, p));
    for (double v = 500.0; v <= 550.0; v += 5.0) CHECK(fuel_flow(v, 35000.0, p) < fuel_flow(v, 10000.0, p));
    CHECK_THROWS_AS(fuel_flow(349.0, 20000.0, p), DomainError);
    CHECK_THROWS_AS(fuel_flow(400.0, 36000.0, p), DomainError);
}

TEST_CASE("grid fuel range and extrema regions") {
    const auto ext = surface_extrema(fuel_grid(calibrate()));
    CHECK(ext.max.speed_kt >= 500.0);
    CHECK(ext.max.altitude_ft <= 12000.0);
    CHECK(ext.min.fuel_lb >= 900.0);
    CHECK(ext.min.fuel_lb <= 1100.0);
    CHECK(ext.max.fuel_lb >= 1700.0);
    CHECK(ext.max.fuel_lb <= 1900.0);
    CHECK(ext.min.speed_kt >= 400.0);
    CHECK(ext.min.speed_kt <= 450.0);
    CHECK(ext.min.altitude_ft >= 25000.0);
    CHECK(ext.min.altitude_ft <= 30000.0);
}

TEST_CASE("runner contract and arithmetic") {
    const FuelModelParams p = calibrate();
    const auto d = flights(250, 4);
    const doe::DesignChunk chunk{d.factors, std::span(d.rows).subspan(100, 50), 100};
    const auto t = simulate_navigation(chunk, p, 1);
    REQUIRE(t.rows() == 50);
    CHECK(t.ok_count() == 50);
    for (std::size_t i = 0; i < 50; ++i) {
        CHECK(t.index()[i] == 100 + i);
        const double v = std::get<double>(d.rows[100 + i][0]);
        const double h = std::get<double>(d.rows[100 + i][1]);
        CHECK(t.column("time_of_flight").numbers()[i] == time_of_flight(v, p));
        CHECK(t.column("fuel_consumed").numbers()[i] == total_fuel(v, h, p));
        CHECK(t.column("fuel_consumed").numbers()[i] > 0.0);
    }
}

TEST_CASE("wrong factor set is a contract violation") {
    const auto d = doe::lhs_design({{"speed", doe::Continuous{350, 550}}}, 10, 1);
    const doe::DesignChunk chunk{d.factors, d.rows, 0};
    CHECK_THROWS_AS(simulate_navigation(chunk, calibrate(), 1), ContractViolation);
}

TEST_CASE("noisy results do not depend on chunking or threads") {
    FuelModelParams p = calibrate();
    p.noise_sigma = 0.05;
    const auto d = flights(500, 9);
    auto [a, ra] = exec::run_batches(d, navsim_runner(p, 3, 1), exec::never_stop(), 500);
    auto [b, rb] = exec::run_batches(d, navsim_runner(p, 3, 4), exec::never_stop(), 37);
    CHECK(a == b);
    p.noise_sigma = 0.0;
    auto [c, rc] = exec::run_batches(d, navsim_runner(p, 3, 1), exec::never_stop(), 500);
    CHECK_FALSE(a == c);
    // Median-one lognormal: noisy/clean ratios straddle 1 roughly evenly.
    int above = 0;
    for (std::size_t i = 0; i < 500; ++i)
        above += a.column("fuel_consumed").numbers()[i] > c.column("fuel_consumed").numbers()[i];
    CHECK(above > 200);
    CHECK(above < 300);
}

TEST_CASE("4000-point design shows a weak linear time-fuel relation") {
    const auto d = flights(4000, 7);
    auto [t, rep] = exec::run_batches(d, navsim_runner(calibrate(), 7), exec::never_stop(), 100);
    CHECK(linear_fit_r2(t.column("time_of_flight").numbers(), t.column("fuel_consumed").numbers()) < 0.5);
}
