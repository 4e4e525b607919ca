#include <benchmark/benchmark.h>

#include "biflag/design_optimizer.hpp"
#include "biflag/oracle.hpp"
#include "biflag/sweep.hpp"

using namespace biflag;

static void BM_FullSolve(benchmark::State& state) {
  const RobotConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(full_solve(cfg));
}
BENCHMARK(BM_FullSolve);

static void BM_AverageThrust(benchmark::State& state) {
  const RobotConfig cfg;
  OracleSettings s;
  s.n_segments = static_cast<int>(state.range(0));
  s.n_time = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(average_thrust(cfg, Role::Anterior, 0.01, s));
  state.SetItemsProcessed(state.iterations() * (s.n_segments + 1) * (s.n_time + 1));
}
BENCHMARK(BM_AverageThrust)->Args({64, 16})->Args({512, 128})->Unit(benchmark::kMicrosecond);

static void BM_OracleSolve(benchmark::State& state) {
  const RobotConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(oracle_solve(cfg));
}
BENCHMARK(BM_OracleSolve)->Unit(benchmark::kMillisecond);

static void BM_Heatmap41(benchmark::State& state) {
  HeatmapSpec spec;
  spec.f1_start = spec.f2_start = 0.5;
  spec.f1_stop = spec.f2_stop = 6.0;
  spec.f1_count = spec.f2_count = 41;
  spec.output = Output::Eta;
  for (auto _ : state) benchmark::DoNotOptimize(heatmap(RobotConfig{}, spec));
}
BENCHMARK(BM_Heatmap41)->Unit(benchmark::kMillisecond);

static void BM_OptimizeTwoFrequencies(benchmark::State& state) {
  DesignBounds b;
  b.set(DesignParam::F1, {0.5, 6.0});
  b.set(DesignParam::F2, {0.5, 6.0});
  for (auto _ : state) benchmark::DoNotOptimize(optimize_design(RobotConfig{}, b, Objective::Efficiency));
}
BENCHMARK(BM_OptimizeTwoFrequencies)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
