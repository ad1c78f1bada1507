#include <benchmark/benchmark.h>

#include "dfarm/models/estimators.hpp"
#include "dfarm/models/model.hpp"
#include "dfarm/models/search.hpp"
#include "dfarm/rng.hpp"

using namespace dfarm;
using namespace dfarm::models;

namespace {

struct Problem {
    Eigen::MatrixXd x;
    Targets t;
};

Problem make_problem(Eigen::Index n, Eigen::Index p) {
    CounterRng rng(11);
    Problem pr{Eigen::MatrixXd(n, p), {}};
    pr.t.values.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) pr.x(i, j) = rng.uniform(-1.0, 1.0);
        pr.t.values[i] = std::sin(3.0 * pr.x(i, 0)) + pr.x(i, 1) * pr.x(i, p - 1) + rng.normal(0.0, 0.05);
    }
    return pr;
}

}  // namespace

static void BM_TreeFit(benchmark::State& state) {
    const auto pr = make_problem(state.range(0), 8);
    for (auto _ : state) benchmark::DoNotOptimize(TreeModel::fit(pr.x, pr.t, {12, 1, 1.0}, 1));
}
BENCHMARK(BM_TreeFit)->Arg(1000)->Arg(4000);

static void BM_ForestFit(benchmark::State& state) {
    const auto pr = make_problem(4000, 8);
    for (auto _ : state) benchmark::DoNotOptimize(ForestModel::fit(pr.x, pr.t, static_cast<int>(state.range(0)), true, {12, 1, 0.5}, 1));
}
BENCHMARK(BM_ForestFit)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_MlpGradient(benchmark::State& state) {
    const auto pr = make_problem(256, 8);
    const MlpModel net(8, {32, 16}, 1, false, 2);
    for (auto _ : state) benchmark::DoNotOptimize(net.gradient(pr.x, pr.t));
}
BENCHMARK(BM_MlpGradient);

static void BM_RidgeSearch(benchmark::State& state) {
    CounterRng rng(4);
    std::vector<double> a(2000), b(2000), y(2000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng.uniform();
        b[i] = rng.uniform();
        y[i] = 2.0 * a[i] - b[i] + rng.normal(0.0, 0.1);
    }
    const Dataset data{{DataColumn::numeric("a", a), DataColumn::numeric("b", b)}, DataColumn::numeric("y", y)};
    const ModelSpec spec{ModelFamily::linear_ridge, Task::regression, default_ranges(ModelFamily::linear_ridge), {}};
    SearchOptions opt;
    opt.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(random_search_cv(spec, data, opt));
}
BENCHMARK(BM_RidgeSearch)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
