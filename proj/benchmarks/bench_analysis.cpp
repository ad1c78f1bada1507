#include <benchmark/benchmark.h>

#include "dfarm/analysis/fit.hpp"
#include "dfarm/analysis/hypothesis.hpp"
#include "dfarm/analysis/pareto.hpp"
#include "dfarm/analysis/special.hpp"
#include "dfarm/rng.hpp"

using namespace dfarm;
using namespace dfarm::analysis;

static std::vector<std::vector<double>> random_points(std::size_t n, std::size_t m) {
    CounterRng rng(3);
    std::vector<std::vector<double>> pts(n, std::vector<double>(m));
    for (auto& p : pts)
        for (auto& v : p) v = rng.uniform();
    return pts;
}

static void BM_ParetoFront(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    const std::vector<Direction> dirs(static_cast<std::size_t>(state.range(1)), Direction::minimize);
    for (auto _ : state) benchmark::DoNotOptimize(pareto_front(pts, dirs));
}
BENCHMARK(BM_ParetoFront)->Args({1000, 2})->Args({1000, 3})->Args({10000, 3});

static void BM_IncompleteGamma(benchmark::State& state) {
    double a = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(regularized_gamma_p(a, 1.3 * a));
        a = a < 500.0 ? a * 1.1 : 0.5;
    }
}
BENCHMARK(BM_IncompleteGamma);

static void BM_IncompleteBeta(benchmark::State& state) {
    double x = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(regularized_beta(12.5, 7.25, x));
        x = x < 0.98 ? x + 0.013 : 0.01;
    }
}
BENCHMARK(BM_IncompleteBeta);

static void BM_StudentizedRange(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(studentized_range_cdf(3.5, 4, 30.0));
}
BENCHMARK(BM_StudentizedRange);

static void BM_HypothesisFlow(benchmark::State& state) {
    CounterRng rng(5);
    std::vector<std::vector<double>> groups(3, std::vector<double>(static_cast<std::size_t>(state.range(0))));
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (auto& v : groups[g]) v = rng.normal(0.2 * static_cast<double>(g), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(run_hypothesis_test(groups, false, 0.05));
}
BENCHMARK(BM_HypothesisFlow)->Arg(100)->Arg(5000);

static void BM_FitDistributions(benchmark::State& state) {
    CounterRng rng(6);
    std::vector<double> x(5000);
    for (auto& v : x) v = rng.uniform(2.0, 7.0);
    const auto families = applicable_families(x);
    for (auto _ : state) benchmark::DoNotOptimize(fit_distributions(x, families));
}
BENCHMARK(BM_FitDistributions);
