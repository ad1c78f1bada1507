#pragma once

#include "dfarm/simkit/navsim.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace dfarm::simkit {

// Deterministic total fuel on a regular speed x altitude grid spanning the
// scenario ranges. fuel[r][c] is at (speeds[c], altitudes[r]).
struct FuelGrid {
    std::vector<double> speeds;
    std::vector<double> altitudes;
    std::vector<std::vector<double>> fuel;
};

FuelGrid fuel_grid(const FuelModelParams& p, std::size_t speed_steps = 201, std::size_t altitude_steps = 251);

struct GridPoint {
    double speed_kt = 0.0;
    double altitude_ft = 0.0;
    double fuel_lb = 0.0;
};

struct SurfaceExtrema {
    GridPoint max;
    GridPoint min;
};

// First occurrence in speed-major order wins ties.
SurfaceExtrema surface_extrema(const FuelGrid& grid);

// Coefficient of determination of the least-squares line y ~ x; 0 when
// either variable is constant.
double linear_fit_r2(std::span<const double> x, std::span<const double> y);

}  // namespace dfarm::simkit
