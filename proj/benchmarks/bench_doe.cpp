#include <benchmark/benchmark.h>

#include "dfarm/doe/design.hpp"

using namespace dfarm::doe;

static void BM_LhsDesign(benchmark::State& state) {
    const std::vector<FactorSpec> space{{"a", Continuous{0.0, 1.0}},   {"b", Continuous{-5.0, 5.0}},
                                        {"c", Integer{1, 10}},         {"d", Categorical{{"x", "y", "z"}}},
                                        {"e", Boolean{}},              {"f", Continuous{100.0, 200.0}},
                                        {"g", Continuous{0.0, 1e3}}};
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lhs_design(space, n, 7));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LhsDesign)->Arg(1000)->Arg(3729)->Arg(100000);

static void BM_DesignCsv(benchmark::State& state) {
    const std::vector<FactorSpec> space{{"a", Continuous{0.0, 1.0}}, {"d", Categorical{{"x", "y"}}}, {"e", Boolean{}}};
    const auto design = lhs_design(space, 4000, 1);
    for (auto _ : state) benchmark::DoNotOptimize(design_from_csv(design_to_csv(design), space));
}
BENCHMARK(BM_DesignCsv);
