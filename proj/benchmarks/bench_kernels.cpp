#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "lzcontrol/analysis.hpp"
#include "lzcontrol/constraints.hpp"
#include "lzcontrol/objective.hpp"
#include "lzcontrol/projection.hpp"
#include "lzcontrol/propagation.hpp"

using namespace lzcontrol;

namespace {

ControlField smooth_field(std::size_t n) {
  const TimeGrid g(n, 1.0);
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = std::numbers::pi * g.midpoint(k);
    c[k] = 8.0 * std::sin(x) - 3.0 * std::sin(2 * x) + 1.5 * std::sin(5 * x);
  }
  return ControlField(g, ShapeFunction{}, std::move(c));
}

void BM_Propagate(benchmark::State& state) {
  const ControlField c = smooth_field(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(propagate(c, {.epsilon = 2.0}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Propagate)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

void BM_GradJ(benchmark::State& state) {
  const ControlField c = smooth_field(static_cast<std::size_t>(state.range(0)));
  const GateTarget target = GateTarget::z_rotation(std::numbers::pi / 2);
  for (auto _ : state) benchmark::DoNotOptimize(grad_J(c, target, {.alpha = 1e-6, .epsilon0 = 2.0}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GradJ)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

void BM_GradEta(benchmark::State& state) {
  const ControlField c = smooth_field(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(grad_eta(c));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GradEta)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

void BM_Project(benchmark::State& state) {
  const ControlField c = smooth_field(1024);
  const auto grads = constraint_gradients(c, state.range(0) ? ConstraintMode::full : ConstraintMode::reduced);
  const ControlField g = grad_J(c, GateTarget::z_rotation(std::numbers::pi), {.alpha = 0.0, .epsilon0 = 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(project_gradient(g, grads));
}
BENCHMARK(BM_Project)->Arg(0)->Arg(1);

void BM_Sweep(benchmark::State& state) {
  const ControlField c = smooth_field(1024);
  const GateTarget target = GateTarget::z_rotation(std::numbers::pi / 2);
  for (auto _ : state) benchmark::DoNotOptimize(epsilon_sweep(c, target, 0.0, 6.0, 0.01, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
