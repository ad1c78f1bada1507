#pragma once

#include "dfarm/doe/design.hpp"
#include "dfarm/doe/factor.hpp"
#include "dfarm/error.hpp"
#include "dfarm/exec/controller.hpp"
#include "dfarm/table.hpp"

#include <cstdint>
#include <vector>

namespace dfarm::simkit {

// Analytic flight-fuel model for a fixed navigation route: cruise over the
// route, then a holding pattern flown at the cruise fuel flow.
//
//   fuel flow  FF(v, h) = A sigma(h) (v/100)^3 + B / (sigma(h) v/100)   [lb/hr]
//   sigma(h)  = (1 - h / 145442)^4.2559                                 [h in ft]
//   time      T(v)     = route / v + hold                               [s]
//   fuel      = FF(v, h) T(v) / 3600, times exp(noise_sigma z) when noisy
struct FuelModelParams {
    double a = 0.0;  // parasite term, lb/hr
    double b = 0.0;  // induced term, lb/hr
    double route_nm = 500.0;
    double hold_s = 600.0;
    double noise_sigma = 0.0;
};

inline constexpr double kMinSpeedKt = 350.0;
inline constexpr double kMaxSpeedKt = 550.0;
inline constexpr double kMinAltitudeFt = 10000.0;
inline constexpr double kMaxAltitudeFt = 35000.0;

class CalibrationError : public Error {
public:
    using Error::Error;
};

// ISA troposphere density ratio; DomainError at or above 145442 ft.
double isa_density_ratio(double altitude_ft);
// DomainError outside [350, 550] kt x [10000, 35000] ft.
double fuel_flow(double speed_kt, double altitude_ft, const FuelModelParams& p);
double time_of_flight(double speed_kt, const FuelModelParams& p);
double total_fuel(double speed_kt, double altitude_ft, const FuelModelParams& p);

struct Anchor {
    double speed_kt;
    double altitude_ft;
    double fuel_lb;
};

// The two anchors of the reference scenario: 1800 lb at (525 kt, 10000 ft)
// and 1000 lb at (425 kt, 27500 ft).
inline constexpr Anchor kHighFuelAnchor{525.0, 10000.0, 1800.0};
inline constexpr Anchor kLowFuelAnchor{425.0, 27500.0, 1000.0};

// Solves the 2x2 linear system in (A, B) that makes the deterministic model
// hit both anchors. A singular system, a non-positive coefficient or a
// residual above 1e-6 lb is a CalibrationError.
FuelModelParams calibrate(FuelModelParams base = {}, Anchor first = kHighFuelAnchor, Anchor second = kLowFuelAnchor);

// The scenario's factor space: speed continuous [350, 550] kt, altitude
// continuous [10000, 35000] ft.
std::vector<doe::FactorSpec> navigation_factors();

// Runner for designs with exactly the numeric factors `speed` and
// `altitude`; anything else is a ContractViolation. Output columns: speed,
// altitude, time_of_flight, fuel_consumed. Rows outside the scenario ranges
// are marked failed. Noise for design row i comes from substream (seed, i),
// so results do not depend on chunking or `threads`.
ResultTable simulate_navigation(const doe::DesignChunk& chunk, const FuelModelParams& p, std::uint64_t seed,
                                unsigned threads = 1);
exec::Runner navsim_runner(FuelModelParams p, std::uint64_t seed, unsigned threads = 1);

}  // namespace dfarm::simkit
