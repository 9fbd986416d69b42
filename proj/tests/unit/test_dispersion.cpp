#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "poltyrev/asymptotics.hpp"
#include "poltyrev/bounds.hpp"
#include "poltyrev/dispersion.hpp"
#include "poltyrev/errors.hpp"

using namespace poltyrev;

namespace {

const double kDs = delta_star(1.0);
const double kDc = delta_cr(1.0);

}  // namespace

TEST(NormTail, CentredArgument) {
  const NormTailApprox a = norm_tail_normal_approx(50, std::sqrt(50.0 * 2.0), 2.0);
  EXPECT_NEAR(a.approx, 0.5, 1e-15);
  EXPECT_NEAR(norm_tail_normal_approx(400, 1.0, 1.0).guarantee * 2.0,
              norm_tail_normal_approx(100, 1.0, 1.0).guarantee, 1e-15);
}

TEST(NormTail, ExampleWithinGuarantee) {
  const NormTailApprox a = norm_tail_normal_approx(100, std::sqrt(120.0), 1.0);
  EXPECT_NEAR(a.approx, oracle::gauss_q(20.0 / std::sqrt(200.0)), 1e-15);
  EXPECT_LE(std::fabs(oracle::gamma_q(50.0, 60.0) - a.approx), 6.0 * 3.0785 / 10.0);
  EXPECT_LE(std::fabs(oracle::gamma_q(50.0, 60.0) - a.approx), a.guarantee);
}

TEST(NormTail, GuaranteeHoldsOnGrid) {
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + static_cast<int>(std::round(std::pow(2000.0, i / 99.0)));
    for (int j = 0; j < 100; ++j) {
      const double r2 = n * (0.2 + 2.8 * j / 99.0);
      const NormTailApprox a = norm_tail_normal_approx(n, std::sqrt(r2), 1.0);
      EXPECT_LE(std::fabs(oracle::gamma_q(0.5 * n, 0.5 * r2) - a.approx), a.guarantee) << n << " " << r2;
    }
  }
}

TEST(BerryEsseen, ValueAndSymmetry) {
  const double t = berry_esseen_T();
  EXPECT_GE(t, 3.0);
  EXPECT_LE(t, 3.2);
  EXPECT_EQ(t, berry_esseen_T());
  auto f = [](double x) {
    const double v = (x * x - 1.0) / std::numbers::sqrt2;
    return std::fabs(v * v * v) * std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  };
  const double inf = std::numeric_limits<double>::infinity();
  auto reflected = [&](double x) { return f(-x); };
  const double half = oracle::integrate(f, 0.0, 1.0) + oracle::integrate(f, 1.0, inf);
  const double full = oracle::integrate(reflected, 1.0, inf) + oracle::integrate(f, -1.0, 1.0) + oracle::integrate(f, 1.0, inf);
  EXPECT_NEAR(full, 2.0 * half, 1e-10);
  EXPECT_NEAR(t, full, 1e-6);
  // 40-digit quadrature reference.
  EXPECT_NEAR(t, 3.07293153381332, 1e-6);
}

TEST(BerryEsseen, MonteCarloCrossCheck) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  const int samples = 10'000'000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = g(rng);
    const double v = (x * x - 1.0) / std::numbers::sqrt2;
    const double a = std::fabs(v * v * v);
    sum += a;
    sum2 += a * a;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum2 / samples - mean * mean) / samples);
  EXPECT_NEAR(berry_esseen_T(), mean, 3.0 * se);
}

TEST(NldApprox, Values) {
  const double q = oracle::gauss_qinv(0.01);
  const double expected = kDs - std::sqrt(1.0 / 2000.0) * q + std::log(1000.0) / 2000.0;
  EXPECT_NEAR(nld_eps_approx(1000, 0.01, 1.0), expected, 1e-12);
  EXPECT_NEAR(nld_eps_approx(1000, 0.01, 1.0), -1.4675034, 5e-8);
  EXPECT_NEAR(nld_eps_approx(77, 0.5, 1.0), kDs + std::log(77.0) / 154.0, 1e-15);
  EXPECT_LT(nld_eps_approx(300, 0.001, 1.0), nld_eps_approx(300, 0.01, 1.0));
  EXPECT_THROW(nld_eps_approx(300, 0.0, 1.0), DomainError);
  EXPECT_THROW(nld_eps_approx(300, 1.0, 1.0), DomainError);
}

TEST(Converse, ClosedFormAnchor) {
  const double eps = 2.0 * oracle::gauss_q(0.5);
  const InversionResult r = nld_eps_converse(1, eps, 1.0);
  EXPECT_NEAR(r.delta, 0.0, 1e-9);
  EXPECT_NEAR(nld_eps_converse(1, 0.6170751, 1.0).delta, 0.0, 1e-6);
  EXPECT_LE(r.bracket_width, kDefaultInversionTol);
}

TEST(Converse, RoundTrip) {
  for (int n : {1, 2, 10, 100, 1000}) {
    for (double eps : {1e-6, 0.01, 0.3}) {
      const InversionResult r = nld_eps_converse(n, eps, 1.0);
      EXPECT_NEAR(sphere_bound(ChannelPoint(n, r.delta, 1.0)).value(), eps, 1e-10 * std::max(1.0, eps)) << n;
      EXPECT_NEAR(r.bound_value.linear(), eps, 1e-10);
      EXPECT_LE(r.bracket_width, kDefaultInversionTol);
      EXPECT_LE(r.iterations, 200);
    }
  }
}

TEST(Converse, OneOverNRemainder) {
  const InversionResult r = nld_eps_converse(1000, 0.01, 1.0);
  EXPECT_LE(std::fabs(1000.0 * (r.delta - nld_eps_approx(1000, 0.01, 1.0))), 10.0);
  EXPECT_GT(r.delta, nld_eps_approx(1000, 0.01, 1.0));
}

TEST(Achievable, OrderingAndRoundTrip) {
  double prev_gap = 1e9;
  for (int n : {10, 100, 1000}) {
    const InversionResult a = nld_eps_achievable(n, 0.01, 1.0);
    const InversionResult c = nld_eps_converse(n, 0.01, 1.0);
    EXPECT_LE(a.delta, c.delta) << n;
    EXPECT_NEAR(ml_bound(ChannelPoint(n, a.delta, 1.0)).raw.linear(), 0.01, 1e-10);
    if (n >= 100) {
      EXPECT_LT(c.delta - a.delta, prev_gap);
    }
    prev_gap = c.delta - a.delta;
  }
}

TEST(Inversion, MonotoneInEps) {
  for (int n : {5, 60}) {
    double prev_c = -1e9, prev_a = -1e9;
    for (double eps : {1e-8, 1e-5, 1e-3, 0.01, 0.1, 0.5, 0.9}) {
      const double c = nld_eps_converse(n, eps, 1.0).delta;
      const double a = nld_eps_achievable(n, eps, 1.0).delta;
      EXPECT_GT(c, prev_c);
      EXPECT_GT(a, prev_a);
      prev_c = c;
      prev_a = a;
    }
  }
}

TEST(Inversion, RejectsBadEps) {
  EXPECT_THROW(nld_eps_converse(10, 0.0, 1.0), DomainError);
  EXPECT_THROW(nld_eps_achievable(10, 1.5, 1.0), DomainError);
}

TEST(DispersionBracket, FittedConstant) {
  double c_fit = 0.0;
  for (int n : {20, 50, 100, 500, 1000, 5000}) {
    const double approx = nld_eps_approx(n, 0.01, 1.0);
    const double c = nld_eps_converse(n, 0.01, 1.0).delta;
    const double a = nld_eps_achievable(n, 0.01, 1.0).delta;
    EXPECT_LE(a, c) << n;
    c_fit = std::max({c_fit, std::fabs(n * (c - approx)), std::fabs(n * (a - approx))});
  }
  EXPECT_LT(c_fit, 20.0);
}

TEST(Vnr, FromNld) {
  EXPECT_NEAR(vnr_from_nld(kDs, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(vnr_from_nld(kDc, 1.0), 2.0, 1e-15);
  EXPECT_NEAR(vnr_from_nld(-1.5, 1.0), std::exp(2.0 * (kDs + 1.5)), 1e-15);
  EXPECT_NEAR(vnr_from_nld(-1.5, 1.0), 1.1760048, 5e-8);
}

TEST(Vnr, OptimalApproximation) {
  EXPECT_NEAR(vnr_opt_approx(100, 0.5), 1.0 - std::log(100.0) / 100.0, 1e-15);
  EXPECT_NEAR(vnr_opt_approx(100, 0.5), 0.9539483, 5e-8);
  for (int n : {100, 300, 1000, 10000}) {
    const double mu = vnr_from_nld(nld_eps_approx(n, 0.01, 1.0), 1.0);
    EXPECT_LE(std::fabs(vnr_opt_approx(n, 0.01) - mu), 20.0 / n) << n;
  }
  double prev = 1e9;
  for (int n : {100, 10000, 1000000}) {
    const double d = std::fabs(vnr_opt_approx(n, 0.01) - 1.0);
    EXPECT_LT(d, prev);
    prev = d;
  }
  EXPECT_LT(prev, 0.005);
}

TEST(GapDb, Anchors) {
  EXPECT_NEAR(gap_db(-1.5, 1.0), 0.704, 5e-4);
  EXPECT_NEAR(gap_db(-2.0, 1.0), 5.05, 5e-3);
  EXPECT_NEAR(gap_db(kDc, 1.0), 3.01, 5e-3);
  EXPECT_NEAR(gap_db(kDc, 1.0), 3.0103, 5e-5);
}

TEST(GapDb, AffineInNld) {
  for (double d = -4.0; d < 1.0; d += 0.37) {
    EXPECT_NEAR((gap_db(d + 0.1, 1.0) - gap_db(d, 1.0)) / 0.1, -8.6858896, 1e-6);
  }
}

TEST(LatticeSnr, MatchesTermsAndLimits) {
  const ChannelPoint p(64, -1.7, 1.0);
  EXPECT_DOUBLE_EQ(lattice_snr_rho(p), terms(p).rho_star);
  // rho/mu -> 1 only as fast as (n pi)^{1/n}: about 0.81% above at n = 1000.
  double prev = 1e9;
  for (int n : {100, 1000, 100000}) {
    const double gap = lattice_snr_rho(ChannelPoint(n, -1.5, 1.0)) / vnr_from_nld(-1.5, 1.0) - 1.0;
    EXPECT_GT(gap, 0.0);
    EXPECT_LT(gap, prev);
    prev = gap;
    if (n == 1000) EXPECT_NEAR(gap, 0.0081, 2e-4);
  }
  EXPECT_LT(prev, 0.005);
  EXPECT_NEAR(lattice_snr_rho(ChannelPoint(2, kDs, 1.0)), std::numbers::e, 1e-14);
}

TEST(NormalizedErrorProb, Values) {
  EXPECT_DOUBLE_EQ(normalized_error_prob(0.013, 1), 0.013);
  // 40-digit reference; the naive 1 - (1 - eps)^n loses about five digits here.
  EXPECT_NEAR(normalized_error_prob(1e-5, 24), 2.399724020238937442e-4, 1e-18);
  EXPECT_NEAR(normalized_error_prob(1e-5, 24), 2.3997240e-4, 5e-12);
  for (auto [a, b] : {std::pair{3, 8}, {24, 2}, {7, 7}}) {
    EXPECT_NEAR(normalized_error_prob(1e-5, a * b), normalized_error_prob(normalized_error_prob(1e-5, a), b), 1e-15);
  }
}
