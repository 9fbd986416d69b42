#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "poltyrev/bounds.hpp"
#include "poltyrev/errors.hpp"

using namespace poltyrev;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

std::vector<int> dyadic(int lo, int hi) {
  std::vector<int> v;
  for (int n = lo; n <= hi; n *= 2) v.push_back(n);
  return v;
}

}  // namespace

TEST(ChannelPoint, Validation) {
  EXPECT_THROW(ChannelPoint(0, 0.0, 1.0), DomainError);
  EXPECT_THROW(ChannelPoint(3, 0.0, 0.0), DomainError);
  EXPECT_THROW(ChannelPoint(3, std::nan(""), 1.0), DomainError);
  const ChannelPoint p(4, -1.5, 2.0);
  EXPECT_DOUBLE_EQ(p.log_density(), -6.0);
}

TEST(Landmarks, CapacityAndCritical) {
  EXPECT_NEAR(delta_star(1.0), -1.4189385, 5e-8);
  EXPECT_NEAR(delta_star(1.0 / (2.0 * kPi * std::numbers::e)), 0.0, 1e-15);
  EXPECT_NEAR(delta_cr(1.0), -1.7655121, 5e-8);
  for (double s2 : {0.01, 1.0, 42.0}) {
    EXPECT_NEAR(delta_star(s2) - delta_cr(s2), 0.5 * std::log(2.0), 1e-15);
    EXPECT_NEAR(delta_star(s2) - delta_ex(s2), std::log(2.0), 1e-15);
  }
  EXPECT_THROW(delta_star(0.0), DomainError);
  EXPECT_THROW(delta_cr(-1.0), DomainError);
}

TEST(EffectiveRadius, ClosedForms) {
  EXPECT_NEAR(effective_radius(ChannelPoint(1, 0.0, 1.0)), 0.5, 1e-15);
  EXPECT_NEAR(effective_radius(ChannelPoint(2, 0.0, 1.0)), 1.0 / std::sqrt(kPi), 1e-15);
  EXPECT_NEAR(effective_radius(ChannelPoint(24, -1.5, 1.0)), std::exp(oracle::log_r_eff(24, -1.5)), 1e-13);
}

TEST(SphereBound, ClosedForms) {
  const BoundValue b1 = sphere_bound(ChannelPoint(1, 0.0, 1.0));
  EXPECT_EQ(b1.kind, BoundKind::sphere);
  EXPECT_NEAR(b1.value(), 2.0 * oracle::gauss_q(0.5), 1e-14);
  EXPECT_NEAR(b1.value(), 0.6170751, 5e-8);
  EXPECT_DOUBLE_EQ(b1.radius_used, 0.5);
  // chi^2_2 tail: exp(-r^2/2) with r^2 = 1/pi.
  EXPECT_NEAR(sphere_bound(ChannelPoint(2, 0.0, 1.0)).value(), std::exp(-1.0 / (2.0 * kPi)), 1e-14);
}

TEST(SphereBound, MatchesIndependentEvaluation) {
  for (int n : {1, 3, 10, 57, 300}) {
    for (double d : {-2.0, -1.5, -1.0}) {
      const double r = std::exp(oracle::log_r_eff(n, d));
      EXPECT_LE(rel(sphere_bound(ChannelPoint(n, d, 1.0)).value(), oracle::norm_tail(n, r, 1.0)), 1e-11);
    }
  }
}

TEST(SphereBoundByVolume, ReproducesSphereBound) {
  for (int n : {1, 4, 33}) {
    const ChannelPoint p(n, -1.3, 0.7);
    EXPECT_LE(rel(sphere_bound_by_volume(n, std::exp(-n * p.nld()), 0.7), sphere_bound(p).value()), 1e-12);
  }
}

TEST(SphereBoundByVolume, ThreePointConvexity) {
  const double a = sphere_bound_by_volume(3, 0.5, 1.0);
  const double b = sphere_bound_by_volume(3, 1.0, 1.0);
  const double c = sphere_bound_by_volume(3, 1.5, 1.0);
  EXPECT_GE(a - 2.0 * b + c, 0.0);
}

TEST(SphereBoundByVolume, ConvexOnGeometricGrids) {
  for (int n : {1, 2, 8, 32}) {
    // Four decades of volume centred on the typical noise ball.
    const double v0 = std::exp(oracle::log_vn(n) + 0.5 * n * std::log(static_cast<double>(n)));
    std::vector<double> v, f;
    for (int k = 0; k <= 200; ++k) {
      v.push_back(v0 * std::pow(10.0, -2.0 + 4.0 * k / 200.0));
      f.push_back(sphere_bound_by_volume(n, v.back(), 1.0));
    }
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      const double s1 = (f[i] - f[i - 1]) / (v[i] - v[i - 1]);
      const double s2 = (f[i + 1] - f[i]) / (v[i + 1] - v[i]);
      EXPECT_GE(s2 - s1, -1e-12 * std::fabs(s1)) << "n=" << n << " i=" << i;
    }
  }
}

TEST(SphereBoundByVolume, VanishesForLargeVolumes) {
  double prev = 1.0;
  for (double v = 1.0; v < 1e12; v *= 10.0) {
    const double f = sphere_bound_by_volume(4, v, 1.0);
    // Strict until the linear value underflows.
    if (prev > 0.0) {
      EXPECT_LT(f, prev);
    } else {
      EXPECT_EQ(f, 0.0);
    }
    prev = f;
  }
  EXPECT_LT(prev, 1e-100);
  EXPECT_EQ(sphere_bound_by_volume(4, std::numeric_limits<double>::infinity(), 1.0), 0.0);
}

TEST(MlBound, ExceedsSphereBound) {
  for (int n : {1, 2, 7, 64, 500}) {
    for (double d : {-2.5, -1.5, -1.42}) {
      const ChannelPoint p(n, d, 1.0);
      EXPECT_GT(ml_bound(p).raw, sphere_bound(p).raw);
    }
  }
}

TEST(MlBound, ClosedFormMatchesQuadrature) {
  const ChannelPoint p(8, -1.5, 1.0);
  const double r = effective_radius(p);
  EXPECT_LE(rel(ml_redundancy_term(p, r).linear(), oracle::ml_first_term(8, -1.5, 1.0, r)), 1e-10);
}

TEST(MlBound, DefaultRadiusIsLocallyOptimal) {
  for (int n : {4, 16, 64}) {
    const ChannelPoint p(n, -1.5, 1.0);
    const BoundValue b = ml_bound(p);
    EXPECT_LE(b.raw, ml_bound(p, b.radius_used * 1.05).raw);
    EXPECT_LE(b.raw, ml_bound(p, b.radius_used * 0.95).raw);
  }
}

TEST(MlBound, VacuityIsFlagged) {
  // At r_eff the union-bound term is E[(|Z|/r_eff)^n; |Z| < r_eff] <= Pr{|Z| < r_eff},
  // so only an oversized radius can push the sum past one.
  const ChannelPoint p(2, 0.5, 1.0);
  EXPECT_FALSE(ml_bound(p).vacuous());
  const BoundValue b = ml_bound(p, 3.0 * effective_radius(p));
  EXPECT_TRUE(b.vacuous());
  EXPECT_EQ(b.value(), 1.0);
  EXPECT_EQ(b.log_value(), 0.0);
  EXPECT_GT(b.raw.log(), 0.0);
  EXPECT_FALSE(ml_bound(ChannelPoint(100, -1.5, 1.0)).vacuous());
}

TEST(TypicalityBound, DefaultRadius) {
  const double ds = delta_star(1.0);
  for (int n : {3, 50}) {
    const BoundValue b = typicality_bound(ChannelPoint(n, ds - 0.5, 1.0));
    EXPECT_NEAR(b.radius_used, std::sqrt(2.0 * n), 1e-12);
  }
  EXPECT_THROW(typicality_bound(ChannelPoint(4, ds + 0.5, 1.0)), DomainError);
  EXPECT_NO_THROW(typicality_bound(ChannelPoint(4, ds + 0.5, 1.0), 1.0));
}

TEST(TypicalityBound, DominatesMlBound) {
  for (int n = 2; n <= 256; ++n) {
    for (double d : {delta_cr(1.0), -1.5}) {
      const ChannelPoint p(n, d, 1.0);
      EXPECT_GE(typicality_bound(p).raw, ml_bound(p).raw) << n << " " << d;
    }
  }
}

TEST(TypicalityBound, DefaultRadiusBeatsPerturbations) {
  for (int n : {4, 64}) {
    const ChannelPoint p(n, -1.5, 1.0);
    const BoundValue b = typicality_bound(p);
    EXPECT_LE(b.raw, typicality_bound(p, b.radius_used * 1.05).raw) << n;
    EXPECT_LE(b.raw, typicality_bound(p, b.radius_used * 0.95).raw) << n;
  }
}

TEST(PoltyrevBound, SameRadiusSameValue) {
  const ChannelPoint p(30, -1.6, 1.0);
  const BoundValue b = poltyrev_ml_bound(p);
  EXPECT_EQ(b.kind, BoundKind::poltyrev_r);
  EXPECT_NEAR(b.radius_used, std::sqrt(30.0) * std::exp(p.gap_nats()), 1e-12);
  EXPECT_EQ(b.raw, ml_bound(p, b.radius_used).raw);
}

TEST(PoltyrevBound, OrderingAgainstMl) {
  const ChannelPoint above(100, -1.5, 1.0);
  EXPECT_GE(poltyrev_ml_bound(above).raw, ml_bound(above).raw);
  const ChannelPoint below(100, -2.0, 1.0);
  const double ratio = (poltyrev_ml_bound(below).raw / ml_bound(below).raw).linear();
  EXPECT_GE(ratio, 1.0);
  EXPECT_LE(ratio, 1.5);
}

TEST(DSection, Endpoints) {
  EXPECT_EQ(d_section_prob(3, 2.0, 4.0, 1.0), 0.0);
  for (int n : {1, 2, 3, 6}) {
    EXPECT_NEAR(d_section_prob(n, 1.3, 0.0, 0.8), 0.5 * (1.0 - oracle::norm_tail(n, 1.3, 0.8)), 1e-11) << n;
  }
  EXPECT_THROW(d_section_prob(3, 1.0, 2.5, 1.0), DomainError);
  EXPECT_THROW(d_section_prob(3, 1.0, -0.1, 1.0), DomainError);
}

TEST(DSection, MonteCarloOracle) {
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> g;
  const int samples = 1'000'000;
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = g(rng), y = g(rng), z = g(rng);
    if (x >= 0.5 && x * x + y * y + z * z <= 4.0) ++hits;
  }
  const double p_hat = static_cast<double>(hits) / samples;
  const double se = std::sqrt(p_hat * (1.0 - p_hat) / samples);
  EXPECT_NEAR(d_section_prob(3, 2.0, 1.0, 1.0), p_hat, 3.0 * se);
}

TEST(Equivalence, ExamplePoints) {
  for (auto [n, r, s2] : std::vector<std::tuple<int, double, double>>{{2, 1.0, 1.0}, {3, 0.8, 0.5}, {4, 2.0, 1.0}}) {
    const EquivalenceResult e = equivalence_check(n, r, s2);
    EXPECT_TRUE(e.converged);
    EXPECT_LE(e.discrepancy, 1e-6) << n << " " << r;
  }
}

TEST(Equivalence, RhsAgreesWithClosedForm) {
  // The radial integral equals e^{-n delta} V_n^{-1} times the redundancy term.
  const int n = 4;
  const double r = 1.7;
  const ChannelPoint p(n, 0.0, 1.0);
  const double closed = ml_redundancy_term(p, r).linear() / std::exp(oracle::log_vn(n));
  EXPECT_LE(rel(equivalence_check(n, r, 1.0).rhs, closed), 1e-9);
}

TEST(BoundInvariants, Ordering) {
  const double s2 = 1.0;
  const double dc = delta_cr(s2);
  for (int n : dyadic(2, 512)) {
    for (double d : {dc - 0.3, dc, 0.5 * (dc + delta_star(s2))}) {
      const ChannelPoint p(n, d, s2);
      EXPECT_LE(sphere_bound(p).raw, ml_bound(p).raw) << n << " " << d;
      EXPECT_LE(ml_bound(p).raw, typicality_bound(p).raw) << n << " " << d;
    }
  }
}

TEST(BoundInvariants, ScaleCovariance) {
  for (int n : {1, 5, 40, 400}) {
    const ChannelPoint base(n, -1.55, 1.0);
    for (double c : {0.25, 3.0, 17.0}) {
      const ChannelPoint moved(n, -1.55 - 0.5 * std::log(c), c);
      EXPECT_LE(rel(sphere_bound(moved).raw.linear(), sphere_bound(base).raw.linear()), 1e-12);
      EXPECT_LE(rel(ml_bound(moved).raw.linear(), ml_bound(base).raw.linear()), 1e-12);
      EXPECT_LE(rel(typicality_bound(moved).raw.linear(), typicality_bound(base).raw.linear()), 1e-12);
      EXPECT_LE(rel(poltyrev_ml_bound(moved).raw.linear(), poltyrev_ml_bound(base).raw.linear()), 1e-12);
    }
  }
}

TEST(BoundInvariants, IncreasingInNld) {
  for (int n : {1, 3, 30, 300}) {
    LogProb prev[4] = {LogProb::zero(), LogProb::zero(), LogProb::zero(), LogProb::zero()};
    for (double d = -3.0; d <= -1.0; d += 0.01) {
      const ChannelPoint p(n, d, 1.0);
      const LogProb cur[4] = {sphere_bound(p).raw, ml_bound(p).raw, typicality_bound(p).raw,
                              poltyrev_ml_bound(p).raw};
      for (int k = 0; k < 4; ++k) {
        EXPECT_GT(cur[k], prev[k]) << "kind " << k << " n=" << n << " d=" << d;
        prev[k] = cur[k];
      }
    }
  }
}

TEST(BoundKind, Names) {
  EXPECT_EQ(to_string(BoundKind::sphere), "sphere");
  EXPECT_EQ(to_string(BoundKind::poltyrev_r), "poltyrev");
}
