#include <benchmark/benchmark.h>

#include <numbers>

#include "giantwg/dde.hpp"
#include "giantwg/emission.hpp"
#include "giantwg/spectral.hpp"
#include "giantwg/sweep.hpp"

using namespace giantwg;

namespace {

constexpr double kPi = std::numbers::pi;

GiantAtomConfig three_legs() {
  return GiantAtomConfig(4 * kPi, 0.5, 0.0, {{0.0, 1.0, 0.0, {}}, {0.25, 1.0, 0.0, {}}, {1.0, 1.0, 0.0, {}}});
}

void BM_IntegrateEmission(benchmark::State& state) {
  const GiantAtomConfig c = three_legs();
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_emission(c, t));
}
BENCHMARK(BM_IntegrateEmission)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_AccumulateDirectional(benchmark::State& state) {
  const GiantAtomConfig c = three_legs();
  const Trajectory tr = integrate_emission(c, 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(accumulate_directional(tr, c, state.range(0) != 0));
}
BENCHMARK(BM_AccumulateDirectional)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FindPoles(benchmark::State& state) {
  const GiantAtomConfig c = three_legs();
  for (auto _ : state) benchmark::DoNotOptimize(find_poles(c));
}
BENCHMARK(BM_FindPoles)->Unit(benchmark::kMillisecond);

void BM_ClosedFormDiagram(benchmark::State& state) {
  DiagramSpec spec;
  spec.dzeta = {0.0, 2 * kPi, 101};
  spec.dtheta = {0.0, 2 * kPi, 101};
  for (auto _ : state) benchmark::DoNotOptimize(run_diagram_sweep(spec, 1));
}
BENCHMARK(BM_ClosedFormDiagram)->Unit(benchmark::kMillisecond);

void BM_DdeDiagramCell(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dde_diagram_cell(3, 0.01, 100 * kPi, 1.0, 0.4));
}
BENCHMARK(BM_DdeDiagramCell)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
