#pragma once

#include <optional>
#include <string_view>

#include "poltyrev/log_prob.hpp"

namespace poltyrev {

/// An evaluation point (n, delta, sigma^2): dimension, normalized log density
/// in nats per dimension, and per-dimension noise variance.
class ChannelPoint {
 public:
  ChannelPoint(int n, double nld, double sigma2);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] double nld() const { return nld_; }
  [[nodiscard]] double sigma2() const { return sigma2_; }
  [[nodiscard]] double sigma() const;
  /// ln gamma = n * delta.
  [[nodiscard]] double log_density() const { return n_ * nld_; }
  /// delta* - delta.
  [[nodiscard]] double gap_nats() const;

 private:
  int n_;
  double nld_;
  double sigma2_;
};

enum class BoundKind { sphere, ml, typicality, poltyrev_r };

std::string_view to_string(BoundKind kind);

/// A bound carried in log domain. `raw` is the unclamped value; it exceeds one
/// exactly when the bound is vacuous.
struct BoundValue {
  BoundKind kind;
  LogProb raw;
  double radius_used;

  [[nodiscard]] bool vacuous() const { return raw > LogProb::one(); }
  /// ln of the clamped value, always <= 0 (-inf for an exact zero).
  [[nodiscard]] double log_value() const { return raw.clamped().log(); }
  /// The clamped linear value in [0, 1].
  [[nodiscard]] double value() const { return raw.probability(); }
};

double delta_star(double sigma2);
double delta_cr(double sigma2);
/// delta* - ln 2; the boundary of the expurgation region (constant only).
double delta_ex(double sigma2);

double effective_radius(const ChannelPoint& point);
double log_effective_radius(const ChannelPoint& point);

/// Pr{|Z| > r_eff}: the converse bound.
BoundValue sphere_bound(const ChannelPoint& point);

/// Probability that the noise leaves a ball of volume v.
double sphere_bound_by_volume(int n, double v, double sigma2);

/// e^{n delta} V_n int_0^r f_R(t) t^n dt, the union-bound part of the ML bound.
LogProb ml_redundancy_term(const ChannelPoint& point, double r);

/// Default r is the effective radius, which minimizes the bound.
BoundValue ml_bound(const ChannelPoint& point, std::optional<double> r = std::nullopt);

/// Default r = sigma sqrt(n (1 + 2(delta* - delta))).
BoundValue typicality_bound(const ChannelPoint& point, std::optional<double> r = std::nullopt);

/// ml_bound at r = sqrt(n) sigma e^{delta* - delta}.
BoundValue poltyrev_ml_bound(const ChannelPoint& point);

/// Pr{Z in D(r, w)}: Z lies in the radius-r ball and beyond the hyperplane at
/// distance w/2 from the origin.
double d_section_prob(int n, double r, double w, double sigma2);

struct EquivalenceResult {
  double lhs;
  double rhs;
  double discrepancy;  // |lhs - rhs| / rhs
  bool converged;
};

/// Compares n int_0^{2r} w^{n-1} Pr{Z in D(r,w)} dw against int_0^r f_R(t) t^n dt,
/// both by adaptive quadrature. Intended for 2 <= n <= 8.
EquivalenceResult equivalence_check(int n, double r, double sigma2);

}  // namespace poltyrev
