#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "fedr/relations.hpp"
#include "fedr/sweep.hpp"

using namespace fedr;

namespace {

std::shared_ptr<const MeterSetup> meter_for(double alpha2) {
  MeasurementConfig cfg;
  cfg.alpha = Complex(std::sqrt(alpha2), 0.0);
  return prepare_meter(cfg);
}

void BM_SweepG(benchmark::State& state, Execution exec) {
  const auto meter = meter_for(static_cast<double>(state.range(0)));
  const std::vector<double> grid = linear_grid(0.02, std::numbers::pi, 60);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_g(meter, grid, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}

void BM_SweepPsa(benchmark::State& state, Execution exec) {
  const std::vector<double> grid = linear_grid(0.05, 2.0, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_psa(grid, 6.0, 0.7, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_SweepG, serial, Execution::Serial)->Arg(2)->Arg(6)->Arg(12)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SweepG, parallel, Execution::Parallel)->Arg(2)->Arg(6)->Arg(12)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SweepPsa, serial, Execution::Serial)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SweepPsa, parallel, Execution::Parallel)->Arg(100)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
