// Serial reference sweep vs the OpenMP sweep over the same d range.

#include <benchmark/benchmark.h>

#include "qlf/sweep.hpp"

using namespace qlf;

static void BM_reference(benchmark::State& state) {
  const i64 hi = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(central_values_reference(1, hi));
  state.SetItemsProcessed(state.iterations() * hi);
}

static void BM_parallel(benchmark::State& state) {
  const i64 hi = state.range(0);
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(central_values(1, hi, kDefaultTruncationEps, threads));
  state.SetItemsProcessed(state.iterations() * hi);
}

BENCHMARK(BM_reference)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel)->Args({20000, 1})->Args({20000, 0})->Args({100000, 1})->Args({100000, 0})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
