#include <benchmark/benchmark.h>

#include <vector>

#include "leofault/faults.hpp"
#include "leofault/geometry.hpp"
#include "leofault/topology.hpp"

using namespace leofault;

namespace {

Constellation dense_shell() {
  const std::vector<ShellSpec> shells{{550.0, 53.0, 72, 22}};
  return Constellation::from_shells(shells);
}

void BM_GrazingAltitude(benchmark::State& state) {
  const EciPosition a{6921.0, 0.0, 0.0};
  const EciPosition b{3460.5, 5993.7, 120.0};
  for (auto _ : state) benchmark::DoNotOptimize(grazing_altitude(a, b));
}
BENCHMARK(BM_GrazingAltitude);

void BM_LinkSnapshot(benchmark::State& state) {
  const auto c = dense_shell();
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(link_snapshot(c, t, 80.0));
    t += 10.0;
  }
  state.SetItemsProcessed(state.iterations() * 2 * 72 * 22);
}
BENCHMARK(BM_LinkSnapshot)->Unit(benchmark::kMillisecond);

void BM_SampleSeuEvents(benchmark::State& state) {
  FaultModelConfig config;
  config.seu_rate_per_device_day = 1e-3;
  std::vector<SatelliteId> fleet;
  for (int i = 0; i < state.range(0); ++i) fleet.push_back({0, i / 22, i % 22});
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_seu_events(config, fleet, 0.0, 86400.0, seed++));
}
BENCHMARK(BM_SampleSeuEvents)->Arg(1584)->Arg(4408)->Unit(benchmark::kMillisecond);

void BM_VisibilityWindows(benchmark::State& state) {
  const auto c = dense_shell();
  const GroundStation gs{"madrid", 40.4, -3.7, 25.0};
  for (auto _ : state) benchmark::DoNotOptimize(visibility_windows(gs, c, 0.0, 3600.0, 10.0));
}
BENCHMARK(BM_VisibilityWindows)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
