#include "cvsteer/sweeps.hpp"

#include <benchmark/benchmark.h>

using namespace cvsteer;

static void BM_SteeringSweep(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  const int n = static_cast<int>(state.range(1));
  std::vector<double> grid = r_grid();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_steering(Family::ghz, n, grid, parallel));
  state.SetLabel(parallel ? "openmp" : "serial");
}
BENCHMARK(BM_SteeringSweep)->ArgsProduct({{0, 1}, {3, 10, 40}})->Unit(benchmark::kMillisecond);

static void BM_OptimizedSweep(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  std::vector<double> grid = r_grid(0.0, 2.5, 26);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_optimized(Family::epr, grid, parallel));
  state.SetLabel(parallel ? "openmp" : "serial");
}
BENCHMARK(BM_OptimizedSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
