// Serial reference vs OpenMP kernels.

#include "taylor/kernels.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

namespace {

using namespace taylor;

void BM_ContainmentSerial(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::containment_trials(state.range(0), 42));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ContainmentOmp(benchmark::State& state) {
    omp_set_num_threads(static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(omp::containment_trials(state.range(0), 42));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SampleGridSerial(benchmark::State& state) {
    const Expr e = parse("sin(x)*exp(x) + 1/(1+x^2)");
    const Interval iv(-2.0, 2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::sample_grid(e, iv, static_cast<int>(state.range(0))));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SampleGridOmp(benchmark::State& state) {
    const Expr e = parse("sin(x)*exp(x) + 1/(1+x^2)");
    const Interval iv(-2.0, 2.0);
    omp_set_num_threads(static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(omp::sample_grid(e, iv, static_cast<int>(state.range(0))));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_ContainmentSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ContainmentOmp)
    ->ArgsProduct({{1000, 10000}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_SampleGridSerial)->Arg(10001)->Arg(100001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleGridOmp)
    ->ArgsProduct({{10001, 100001}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
