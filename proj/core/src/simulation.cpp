#include "poltyrev/simulation.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "poltyrev/dispersion.hpp"
#include "poltyrev/errors.hpp"

namespace poltyrev {

namespace {

constexpr int kMaxProbes = 60;
constexpr double kExpand = 1.25;

std::uint64_t run_stream(const LatticeSpec& spec, double sigma, std::uint64_t trials,
                         std::uint64_t seed, int stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss(0.0, sigma / spec.scale);
  std::vector<double> y(spec.dim);
  std::uint64_t errors = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (double& v : y) v = gauss(rng);
    if (!decodes_to_origin(spec.family, y.data(), spec.dim)) ++errors;
  }
  return errors;
}

bool ci_contains(const SimEstimate& e, double eps) { return e.ci_low <= eps && eps <= e.ci_high; }

}  // namespace

double SimEstimate::stderr_() const {
  if (trials == 0) return 0.0;
  return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
}

Interval clopper_pearson(std::uint64_t errors, std::uint64_t trials, double alpha) {
  if (trials == 0 || errors > trials) throw DomainError("clopper_pearson: need 0 <= errors <= trials, trials > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("clopper_pearson: need alpha in (0,1)");
  const double k = static_cast<double>(errors);
  const double n = static_cast<double>(trials);
  const double low = errors == 0 ? 0.0 : boost::math::ibeta_inv(k, n - k + 1.0, 0.5 * alpha);
  const double high = errors == trials ? 1.0 : boost::math::ibeta_inv(k + 1.0, n - k, 1.0 - 0.5 * alpha);
  return {low, high};
}

SimEstimate simulate_error_prob(const LatticeSpec& spec, double sigma2, std::uint64_t trials,
                                std::uint64_t seed, int streams) {
  if (trials < 1) throw DomainError("simulate_error_prob: need trials >= 1");
  if (streams < 1) throw DomainError("simulate_error_prob: need streams >= 1");
  if (!(sigma2 > 0.0)) throw DomainError("simulate_error_prob: need sigma2 > 0");
  const double sigma = std::sqrt(sigma2);
  std::vector<std::uint64_t> counts(streams, 0);
  std::vector<std::thread> workers;
  workers.reserve(streams);
  const std::uint64_t base = trials / streams;
  const std::uint64_t extra = trials % streams;
  for (int s = 0; s < streams; ++s) {
    const std::uint64_t share = base + (static_cast<std::uint64_t>(s) < extra ? 1 : 0);
    workers.emplace_back([&, s, share] { counts[s] = run_stream(spec, sigma, share, seed, s); });
  }
  for (auto& w : workers) w.join();

  SimEstimate e;
  e.lattice = spec.name;
  e.n = spec.dim;
  e.delta = spec.nld();
  e.sigma2 = sigma2;
  e.trials = trials;
  for (auto c : counts) e.errors += c;
  e.p_hat = static_cast<double>(e.errors) / static_cast<double>(trials);
  const Interval ci = clopper_pearson(e.errors, trials);
  e.ci_low = ci.low;
  e.ci_high = ci.high;
  e.seed = seed;
  e.streams = streams;
  return e;
}

ScaleSearchResult find_scale_for_error(const LatticeSpec& spec, double eps, double sigma2,
                                       std::uint64_t trials_per_probe, std::uint64_t seed,
                                       int streams) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("find_scale_for_error: need eps in (0,1)");
  std::uint64_t trials = trials_per_probe;
  int probes = 0;
  auto probe = [&](double s) {
    ++probes;
    return simulate_error_prob(spec.scaled(s), sigma2, trials, seed, streams);
  };
  auto finish = [&](double s, const SimEstimate& e) {
    const double nld = spec.scaled(s).nld();
    return ScaleSearchResult{spec.scale * s, nld, gap_db(nld, sigma2), e, probes};
  };

  // No lattice beats the sphere bound, so at the converse NLD the error
  // probability is at least eps; that scale is the lower end of the bracket.
  const double converse = nld_eps_converse(spec.dim, eps, sigma2).delta;
  double lo = std::exp(spec.nld() - converse);
  auto check_cap = [&] {
    if (probes >= kMaxProbes) throw ConvergenceError("find_scale_for_error: iteration cap reached");
  };
  while (probe(lo).p_hat < eps) {
    check_cap();
    lo /= kExpand;
  }
  double hi = lo * kExpand;
  while (probe(hi).p_hat >= eps) {
    check_cap();
    lo = hi;
    hi *= kExpand;
  }

  bool refined = false;
  while (true) {
    check_cap();
    const double s = std::sqrt(lo * hi);
    SimEstimate e = probe(s);
    if (ci_contains(e, eps)) {
      if (refined) return finish(s, e);
      refined = true;
      trials = 4 * trials_per_probe;
      e = probe(s);
      if (ci_contains(e, eps)) return finish(s, e);
    }
    (e.p_hat >= eps ? lo : hi) = s;
  }
}

void to_json(nlohmann::json& j, const SimEstimate& e) {
  j = nlohmann::json{{"lattice", e.lattice}, {"n", e.n},           {"delta", e.delta},
                     {"sigma2", e.sigma2},   {"trials", e.trials}, {"errors", e.errors},
                     {"p_hat", e.p_hat},     {"ci_low", e.ci_low}, {"ci_high", e.ci_high},
                     {"seed", e.seed},       {"streams", e.streams}};
}

void from_json(const nlohmann::json& j, SimEstimate& e) {
  j.at("lattice").get_to(e.lattice);
  j.at("n").get_to(e.n);
  j.at("delta").get_to(e.delta);
  j.at("sigma2").get_to(e.sigma2);
  j.at("trials").get_to(e.trials);
  j.at("errors").get_to(e.errors);
  j.at("p_hat").get_to(e.p_hat);
  j.at("ci_low").get_to(e.ci_low);
  j.at("ci_high").get_to(e.ci_high);
  j.at("seed").get_to(e.seed);
  e.streams = j.value("streams", 1);
}

}  // namespace poltyrev
