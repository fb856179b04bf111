#include <benchmark/benchmark.h>

#include "smafv/falk1d.hpp"
#include "smafv/patch2d.hpp"
#include "smafv/scenario.hpp"

namespace smafv {
namespace {

void BM_RodStep(benchmark::State& state) {
  RodSimulation sim(realize(find_preset("rod-low-T")).rod);
  for (auto _ : state) sim.step();
}
BENCHMARK(BM_RodStep);

void BM_PatchStep(benchmark::State& state) {
  Scenario s = find_preset("patch-transform");
  s.M = s.N = static_cast<int>(state.range(0));
  PatchSimulation sim(realize(s).patch);
  for (auto _ : state) sim.step();
}
BENCHMARK(BM_PatchStep)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_PatchStepFiniteDifferenceJacobian(benchmark::State& state) {
  Scenario s = find_preset("patch-transform");
  s.stepper.jacobian_mode = JacobianMode::finite_difference;
  PatchSimulation sim(realize(s).patch);
  for (auto _ : state) sim.step();
}
BENCHMARK(BM_PatchStepFiniteDifferenceJacobian)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace smafv
BENCHMARK_MAIN();
