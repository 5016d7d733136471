#include <benchmark/benchmark.h>

#include "uavcov/channel.hpp"
#include "uavcov/optimizer.hpp"
#include "uavcov/partition.hpp"
#include "uavcov/placement.hpp"

namespace {

using namespace uavcov;

void BM_MeanPathLoss(benchmark::State& state) {
  const Environment env;
  double r2 = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mean_path_loss(env, LinkGeometry::from(r2, 200.0)));
    r2 += 1.0;
  }
}
BENCHMARK(BM_MeanPathLoss);

void BM_OtPartition(benchmark::State& state) {
  Scenario s = reference_scenario(0.02);
  s.grid = {static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0)) / 2};
  const DensityField f(s.density, s.region, s.grid);
  const auto b = s.bandwidths();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ot_partition(s.env, s.uavs, f, s.rate_req, b, s.n_users));
  }
  state.SetComplexityN(static_cast<long>(s.grid.size()));
}
BENCHMARK(BM_OtPartition)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_NewtonPlacement(benchmark::State& state) {
  const Scenario s = reference_scenario(0.01);
  const DensityField f(s.density, s.region, s.grid);
  const Cell cell = Cell::inside(f.lattice(), s.subareas[0]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(newton_raphson_location(s.env, f, cell, 400.0));
  }
}
BENCHMARK(BM_NewtonPlacement)->Unit(benchmark::kMillisecond);

void BM_BruteForcePlacement(benchmark::State& state) {
  const Scenario s = reference_scenario(0.01);
  const DensityField f(s.density, s.region, s.grid);
  const Cell cell = Cell::inside(f.lattice(), s.subareas[0]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_location(s.env, f, cell, 400.0));
  }
}
BENCHMARK(BM_BruteForcePlacement)->Unit(benchmark::kMillisecond);

void BM_AlternateOptimize(benchmark::State& state) {
  const Scenario s = reference_scenario(0.01);
  for (auto _ : state) benchmark::DoNotOptimize(alternate_optimize(s));
}
BENCHMARK(BM_AlternateOptimize)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
