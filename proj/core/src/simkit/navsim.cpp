#include "dfarm/simkit/navsim.hpp"

#include "dfarm/csv.hpp"
#include "dfarm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

namespace dfarm::simkit {

namespace {

constexpr double kTropopauseScale = 145442.0;
constexpr double kDensityExponent = 4.2559;

void check_ranges(double v, double h) {
    if (!(v >= kMinSpeedKt && v <= kMaxSpeedKt))
        throw DomainError("speed " + csv::format_short(v) + " kt outside [350, 550]");
    if (!(h >= kMinAltitudeFt && h <= kMaxAltitudeFt))
        throw DomainError("altitude " + csv::format_short(h) + " ft outside [10000, 35000]");
}

// Fuel burnt over the flight per unit A and per unit B.
std::pair<double, double> fuel_basis(double v, double h, const FuelModelParams& p) {
    const double s = isa_density_ratio(h);
    const double hours = time_of_flight(v, p) / 3600.0;
    return {s * std::pow(v / 100.0, 3) * hours, hours / (s * v / 100.0)};
}

}  // namespace

double isa_density_ratio(double h) {
    if (!(h < kTropopauseScale)) throw DomainError("altitude above the density model's range");
    return std::pow(1.0 - h / kTropopauseScale, kDensityExponent);
}

double fuel_flow(double v, double h, const FuelModelParams& p) {
    check_ranges(v, h);
    const double s = isa_density_ratio(h);
    return p.a * s * std::pow(v / 100.0, 3) + p.b / (s * v / 100.0);
}

double time_of_flight(double v, const FuelModelParams& p) {
    if (!(v > 0.0)) throw DomainError("speed must be positive");
    return p.route_nm / v * 3600.0 + p.hold_s;
}

double total_fuel(double v, double h, const FuelModelParams& p) {
    return fuel_flow(v, h, p) * time_of_flight(v, p) / 3600.0;
}

FuelModelParams calibrate(FuelModelParams base, Anchor first, Anchor second) {
    check_ranges(first.speed_kt, first.altitude_ft);
    check_ranges(second.speed_kt, second.altitude_ft);
    const auto [a1, b1] = fuel_basis(first.speed_kt, first.altitude_ft, base);
    const auto [a2, b2] = fuel_basis(second.speed_kt, second.altitude_ft, base);
    const double det = a1 * b2 - a2 * b1;
    if (std::abs(det) < 1e-12 * std::abs(a1 * b2)) throw CalibrationError("calibration system is singular");
    base.a = (first.fuel_lb * b2 - second.fuel_lb * b1) / det;
    base.b = (a1 * second.fuel_lb - a2 * first.fuel_lb) / det;
    if (!(base.a > 0.0 && base.b > 0.0))
        throw CalibrationError("calibration gives non-positive coefficients A=" + csv::format_short(base.a) +
                               ", B=" + csv::format_short(base.b));
    FuelModelParams check = base;
    check.noise_sigma = 0.0;
    for (const Anchor& anchor : {first, second}) {
        const double residual = total_fuel(anchor.speed_kt, anchor.altitude_ft, check) - anchor.fuel_lb;
        if (!(std::abs(residual) < 1e-6))
            throw CalibrationError("calibration residual " + csv::format_short(residual) + " lb exceeds 1e-6");
    }
    return base;
}

std::vector<doe::FactorSpec> navigation_factors() {
    return {{"speed", doe::Continuous{kMinSpeedKt, kMaxSpeedKt}},
            {"altitude", doe::Continuous{kMinAltitudeFt, kMaxAltitudeFt}}};
}

ResultTable simulate_navigation(const doe::DesignChunk& chunk, const FuelModelParams& p, std::uint64_t seed,
                                unsigned threads) {
    if (chunk.factors.size() != 2)
        throw ContractViolation("navsim expects exactly the factors speed and altitude, got " +
                                std::to_string(chunk.factors.size()));
    const std::size_t js = chunk.factor_index("speed");
    const std::size_t jh = chunk.factor_index("altitude");
    for (std::size_t j : {js, jh})
        if (std::holds_alternative<doe::Categorical>(chunk.factors[j].kind) ||
            std::holds_alternative<doe::Boolean>(chunk.factors[j].kind))
            throw ContractViolation("navsim factor '" + chunk.factors[j].name + "' must be numeric");

    const std::size_t n = chunk.size();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> speed(n), altitude(n), tof(n, nan), fuel(n, nan);
    std::vector<RowStatus> status(n, RowStatus::ok);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            speed[i] = doe::cell_as_real(chunk.rows[i][js]);
            altitude[i] = doe::cell_as_real(chunk.rows[i][jh]);
            try {
                tof[i] = time_of_flight(speed[i], p);
                fuel[i] = total_fuel(speed[i], altitude[i], p);
                if (p.noise_sigma > 0.0) {
                    auto rng = CounterRng::substream(seed, chunk.index(i));
                    fuel[i] *= std::exp(p.noise_sigma * rng.normal());
                }
            } catch (const DomainError&) {
                tof[i] = fuel[i] = nan;
                status[i] = RowStatus::failed;
            }
        }
    };

    const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (t <= 1) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < t; ++k) pool.emplace_back(work, n * k / t, n * (k + 1) / t);
        for (auto& th : pool) th.join();
    }

    std::vector<std::size_t> index(n);
    for (std::size_t i = 0; i < n; ++i) index[i] = chunk.index(i);
    ResultTable out(std::move(index), std::move(status));
    out.add_column(DataColumn::numeric("speed", std::move(speed)));
    out.add_column(DataColumn::numeric("altitude", std::move(altitude)));
    out.add_column(DataColumn::numeric("time_of_flight", std::move(tof)));
    out.add_column(DataColumn::numeric("fuel_consumed", std::move(fuel)));
    return out;
}

exec::Runner navsim_runner(FuelModelParams p, std::uint64_t seed, unsigned threads) {
    return [p, seed, threads](const doe::DesignChunk& chunk) { return simulate_navigation(chunk, p, seed, threads); };
}

}  // namespace dfarm::simkit
