#include <benchmark/benchmark.h>

#include "poltyrev/specfn.hpp"

using namespace poltyrev;

static void BM_RegGammaUpperLog(benchmark::State& state) {
  const double a = 0.5 * static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfn::log_reg_gamma_upper(a, 1.3 * a));
  }
}
BENCHMARK(BM_RegGammaUpperLog)->RangeMultiplier(8)->Range(8, 32768);

static void BM_RegGammaLowerLog(benchmark::State& state) {
  const double a = 0.5 * static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfn::log_reg_gamma_lower(a, 0.7 * a));
  }
}
BENCHMARK(BM_RegGammaLowerLog)->RangeMultiplier(8)->Range(8, 32768);

static void BM_QFuncInv(benchmark::State& state) {
  double p = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfn::q_func_inv(p));
    p = p < 1e-300 ? 1e-3 : p * 0.5;
  }
}
BENCHMARK(BM_QFuncInv);
