#include <benchmark/benchmark.h>

#include "poltyrev/bounds.hpp"
#include "poltyrev/dispersion.hpp"

using namespace poltyrev;

static void BM_MlBound(benchmark::State& state) {
  const ChannelPoint p(static_cast<int>(state.range(0)), -1.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(ml_bound(p));
}
BENCHMARK(BM_MlBound)->RangeMultiplier(4)->Range(4, 4096);

static void BM_SphereBound(benchmark::State& state) {
  const ChannelPoint p(static_cast<int>(state.range(0)), -1.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sphere_bound(p));
}
BENCHMARK(BM_SphereBound)->RangeMultiplier(4)->Range(4, 4096);

static void BM_AchievableInversion(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nld_eps_achievable(n, 0.01, 1.0));
}
BENCHMARK(BM_AchievableInversion)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);
