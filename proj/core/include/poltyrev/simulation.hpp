#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>

#include "poltyrev/lattices.hpp"

namespace poltyrev {

/// Monte Carlo estimate of a lattice error probability with a two-sided 95%
/// Clopper-Pearson interval.
struct SimEstimate {
  std::string lattice;
  int n = 0;
  double delta = 0.0;  // nld of the simulated (scaled) lattice
  double sigma2 = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t seed = 0;
  int streams = 1;

  /// sqrt(p_hat (1 - p_hat) / trials).
  [[nodiscard]] double stderr_() const;
};

struct Interval {
  double low;
  double high;
};

/// Exact binomial interval at confidence 1 - alpha.
Interval clopper_pearson(std::uint64_t errors, std::uint64_t trials, double alpha = 0.05);

/// Transmits the origin through N(0, sigma2 I) noise and counts decoding
/// errors. Stream s draws from mt19937_64 seeded with (seed, s); the result
/// depends on (seed, streams) only, not on thread scheduling.
SimEstimate simulate_error_prob(const LatticeSpec& spec, double sigma2, std::uint64_t trials,
                                std::uint64_t seed, int streams = 1);

struct ScaleSearchResult {
  double scale;
  double nld;
  double gap_db;
  SimEstimate estimate;  // the accepted probe
  int probes;
};

/// Finds a scale s at which the simulated error probability of s * spec has a
/// confidence interval containing eps. Every probe reuses the same seed, so the
/// error count is monotone in s and bisection is well defined.
ScaleSearchResult find_scale_for_error(const LatticeSpec& spec, double eps, double sigma2,
                                       std::uint64_t trials_per_probe, std::uint64_t seed,
                                       int streams = 1);

void to_json(nlohmann::json& j, const SimEstimate& e);
void from_json(const nlohmann::json& j, SimEstimate& e);

}  // namespace poltyrev
