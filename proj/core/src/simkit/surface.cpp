#include "dfarm/simkit/surface.hpp"

#include "dfarm/analysis/descriptive.hpp"
#include "dfarm/error.hpp"

namespace dfarm::simkit {

FuelGrid fuel_grid(const FuelModelParams& p, std::size_t speed_steps, std::size_t altitude_steps) {
    if (speed_steps < 2 || altitude_steps < 2) throw InvalidArgument("fuel grid needs at least 2 steps per axis");
    FuelModelParams clean = p;
    clean.noise_sigma = 0.0;
    FuelGrid g;
    for (std::size_t c = 0; c < speed_steps; ++c)
        g.speeds.push_back(kMinSpeedKt + (kMaxSpeedKt - kMinSpeedKt) * static_cast<double>(c) / static_cast<double>(speed_steps - 1));
    for (std::size_t r = 0; r < altitude_steps; ++r)
        g.altitudes.push_back(kMinAltitudeFt + (kMaxAltitudeFt - kMinAltitudeFt) * static_cast<double>(r) /
                                                   static_cast<double>(altitude_steps - 1));
    g.speeds.back() = kMaxSpeedKt;
    g.altitudes.back() = kMaxAltitudeFt;
    g.fuel.assign(altitude_steps, std::vector<double>(speed_steps));
    for (std::size_t r = 0; r < altitude_steps; ++r)
        for (std::size_t c = 0; c < speed_steps; ++c) g.fuel[r][c] = total_fuel(g.speeds[c], g.altitudes[r], clean);
    return g;
}

SurfaceExtrema surface_extrema(const FuelGrid& grid) {
    SurfaceExtrema e;
    bool first = true;
    for (std::size_t c = 0; c < grid.speeds.size(); ++c)
        for (std::size_t r = 0; r < grid.altitudes.size(); ++r) {
            const GridPoint pt{grid.speeds[c], grid.altitudes[r], grid.fuel[r][c]};
            if (first || pt.fuel_lb > e.max.fuel_lb) e.max = pt;
            if (first || pt.fuel_lb < e.min.fuel_lb) e.min = pt;
            first = false;
        }
    return e;
}

double linear_fit_r2(std::span<const double> x, std::span<const double> y) {
    const double r = analysis::pearson(x, y);
    return r * r;
}

}  // namespace dfarm::simkit
