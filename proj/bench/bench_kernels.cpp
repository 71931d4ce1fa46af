// Serial reference vs OpenMP kernels. Arg(0) is serial, Arg(1) parallel.
#include <benchmark/benchmark.h>

#include <cmath>

#include "pwmel/kernels.hpp"

using namespace pwmel;

namespace {

Execution exec_of(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

std::vector<double> levels(int count) {
  std::vector<double> hs(count);
  for (int i = 0; i < count; ++i) hs[i] = 0.01 * std::pow(1e4, double(i) / (count - 1));
  return hs;
}

void BM_DirectGrid(benchmark::State& state) {
  const PerturbationSpec spec = random_spec(4, Mode::four_zone, 1, 0);
  const auto hs = levels(64);
  for (auto _ : state) benchmark::DoNotOptimize(melnikov_direct_grid(spec, hs, exec_of(state)));
}

void BM_CanonicalGrid(benchmark::State& state) {
  const UForm uf = u_form(random_spec(4, Mode::four_zone, 1, 0));
  const auto hs = levels(4096);
  for (auto _ : state) benchmark::DoNotOptimize(melnikov_canonical_grid(uf, hs, exec_of(state)));
}

void BM_DisplacementGrid(benchmark::State& state) {
  const PerturbationSpec spec = random_spec(2, Mode::two_zone_upper, 1, 0);
  const auto hs = levels(16);
  SimConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(displacement_grid(spec, cfg, hs, exec_of(state)));
}

void BM_BoundSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bound_sweep(3, Mode::four_zone, 32, 7, exec_of(state)));
}

void BM_DualPathSweep(benchmark::State& state) {
  const auto hs = levels(5);
  for (auto _ : state) benchmark::DoNotOptimize(dual_path_sweep(3, Mode::four_zone, 16, hs, 7, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_DirectGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CanonicalGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DisplacementGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DualPathSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
