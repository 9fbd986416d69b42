#include <benchmark/benchmark.h>

#include <random>

#include "poltyrev/lattices.hpp"
#include "poltyrev/simulation.hpp"

using namespace poltyrev;

static void BM_DecodeE8(benchmark::State& state) {
  const LatticeSpec e8 = builtin("E8");
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Eigen::VectorXd> ys(256, Eigen::VectorXd(8));
  for (auto& y : ys) {
    for (int i = 0; i < 8; ++i) y[i] = g(rng);
  }
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode(e8, ys[k++ % ys.size()]));
  }
}
BENCHMARK(BM_DecodeE8);

static void BM_DecodesToOriginE8(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0.0, 0.4);
  std::vector<double> ys(256 * 8);
  for (auto& v : ys) v = g(rng);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decodes_to_origin(LatticeFamily::e8, ys.data() + 8 * (k++ % 256), 8));
  }
}
BENCHMARK(BM_DecodesToOriginE8);

static void BM_SimulateE8(benchmark::State& state) {
  const LatticeSpec e8 = builtin("E8");
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_error_prob(e8, 0.05, static_cast<std::uint64_t>(state.range(0)), 3, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateE8)->Arg(100000)->UseRealTime()->Unit(benchmark::kMillisecond);
