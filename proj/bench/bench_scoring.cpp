// Serial reference scorer vs. the OpenMP nearest-neighbor scorer on 6-D data
// (s_n = 15, n_d = 200, coordinates spread over roughly [-300, 300]).

#include <benchmark/benchmark.h>

#include "odadvcs/datagen.hpp"
#include "odadvcs/fast.hpp"
#include "odadvcs/naive.hpp"

namespace {

odadvcs::Dataset make_data(std::size_t q, std::size_t dim = 6) {
    odadvcs::SyntheticSpec spec;
    spec.dim = dim;
    spec.normal_count = q - q / 50;
    spec.anomaly_count = q / 50;
    spec.radius = 100.0;
    spec.seed = 42;
    return odadvcs::generate(spec).data();
}

const odadvcs::Params kParams(200.0, 15);

void BM_Naive(benchmark::State& state) {
    const auto data = make_data(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(odadvcs::score_all_naive(data, kParams));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Naive)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNSquared);

void BM_FastTree(benchmark::State& state) {
    const auto data = make_data(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(odadvcs::score_all_fast(data, kParams, {odadvcs::IndexKind::kd_tree, 0}));
    }
}
BENCHMARK(BM_FastTree)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_FastTreeSingleThread(benchmark::State& state) {
    const auto data = make_data(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(odadvcs::score_all_fast(data, kParams, {odadvcs::IndexKind::kd_tree, 1}));
    }
}
BENCHMARK(BM_FastTreeSingleThread)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_FastBrute(benchmark::State& state) {
    const auto data = make_data(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(odadvcs::score_all_fast(data, kParams, {odadvcs::IndexKind::brute_force, 0}));
    }
}
BENCHMARK(BM_FastBrute)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_FastBruteHighDim(benchmark::State& state) {
    const auto data = make_data(5000, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(odadvcs::score_all_fast(data, kParams));
    }
}
BENCHMARK(BM_FastBruteHighDim)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
