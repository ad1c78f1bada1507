#include <benchmark/benchmark.h>

#include "dfarm/doe/design.hpp"
#include "dfarm/exec/controller.hpp"
#include "dfarm/geo/coords.hpp"
#include "dfarm/simkit/navsim.hpp"
#include "dfarm/simkit/surface.hpp"

using namespace dfarm;

static void BM_NavsimRun(benchmark::State& state) {
    const auto params = simkit::calibrate();
    const auto design = doe::lhs_design(simkit::navigation_factors(), 4000, 7);
    const auto runner = simkit::navsim_runner(params, 7, static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(exec::run_batches(design, runner, exec::never_stop(), 100));
    state.SetItemsProcessed(state.iterations() * 4000);
}
BENCHMARK(BM_NavsimRun)->Arg(1)->Arg(4);

static void BM_FuelGrid(benchmark::State& state) {
    const auto params = simkit::calibrate();
    for (auto _ : state) benchmark::DoNotOptimize(simkit::surface_extrema(simkit::fuel_grid(params)));
}
BENCHMARK(BM_FuelGrid);

static void BM_EcefRoundTrip(benchmark::State& state) {
    double lat = -80.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(geo::ecef_to_geodetic(geo::geodetic_to_ecef({lat, 45.0, 1200.0})));
        lat = lat < 80.0 ? lat + 0.37 : -80.0;
    }
}
BENCHMARK(BM_EcefRoundTrip);
