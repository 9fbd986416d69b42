#include "poltyrev/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "poltyrev/errors.hpp"
#include "poltyrev/quadrature.hpp"
#include "poltyrev/specfn.hpp"

namespace poltyrev {

namespace {

void check_sigma2(double sigma2) {
  if (!(sigma2 > 0.0) || std::isinf(sigma2)) {
    throw DomainError("sigma2 must be positive and finite, got " + std::to_string(sigma2));
  }
}

void check_radius(double r) {
  if (!(r > 0.0) || std::isinf(r)) {
    throw DomainError("radius must be positive and finite, got " + std::to_string(r));
  }
}

// ln(r^2 / (2 sigma^2)), the chi-square half-argument.
double log_half_chi2(double log_r, double sigma2) {
  return 2.0 * log_r - std::log(sigma2) - std::numbers::ln2;
}

// Density of |Z| for Z ~ N(0, sigma^2 I_n).
double log_norm_density(int n, double t, double sigma2) {
  const double half_n = 0.5 * n;
  return (n - 1) * std::log(t) - t * t / (2.0 * sigma2) - (half_n - 1.0) * std::numbers::ln2 -
         half_n * std::log(sigma2) - specfn::log_gamma(half_n);
}

BoundValue achievability(BoundKind kind, LogProb first, const ChannelPoint& p, double r) {
  const LogProb tail = specfn::log_reg_gamma_upper(0.5 * p.n(), std::exp(log_half_chi2(std::log(r), p.sigma2())));
  return {kind, first + tail, r};
}

}  // namespace

ChannelPoint::ChannelPoint(int n, double nld, double sigma2) : n_(n), nld_(nld), sigma2_(sigma2) {
  if (n < 1) throw DomainError("ChannelPoint: need n >= 1, got " + std::to_string(n));
  if (!std::isfinite(nld)) throw DomainError("ChannelPoint: nld must be finite");
  check_sigma2(sigma2);
}

double ChannelPoint::sigma() const { return std::sqrt(sigma2_); }

double ChannelPoint::gap_nats() const { return delta_star(sigma2_) - nld_; }

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::sphere: return "sphere";
    case BoundKind::ml: return "ml";
    case BoundKind::typicality: return "typicality";
    case BoundKind::poltyrev_r: return "poltyrev";
  }
  return "unknown";
}

double delta_star(double sigma2) {
  check_sigma2(sigma2);
  return -0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * sigma2);
}

double delta_cr(double sigma2) { return delta_star(sigma2) - 0.5 * std::numbers::ln2; }

double delta_ex(double sigma2) { return delta_star(sigma2) - std::numbers::ln2; }

double log_effective_radius(const ChannelPoint& point) {
  return -point.nld() - specfn::log_vn(point.n()) / point.n();
}

double effective_radius(const ChannelPoint& point) { return std::exp(log_effective_radius(point)); }

BoundValue sphere_bound(const ChannelPoint& point) {
  const double log_r = log_effective_radius(point);
  const double x = std::exp(log_half_chi2(log_r, point.sigma2()));
  return {BoundKind::sphere, specfn::log_reg_gamma_upper(0.5 * point.n(), x), std::exp(log_r)};
}

double sphere_bound_by_volume(int n, double v, double sigma2) {
  if (n < 1) throw DomainError("sphere_bound_by_volume: need n >= 1");
  if (!(v > 0.0)) throw DomainError("sphere_bound_by_volume: need v > 0");
  check_sigma2(sigma2);
  if (std::isinf(v)) return 0.0;
  const double log_r = (std::log(v) - specfn::log_vn(n)) / n;
  return specfn::reg_gamma_upper(0.5 * n, std::exp(log_half_chi2(log_r, sigma2)));
}

LogProb ml_redundancy_term(const ChannelPoint& point, double r) {
  check_radius(r);
  const int n = point.n();
  const double x = std::exp(log_half_chi2(std::log(r), point.sigma2()));
  const LogProb lower = specfn::log_reg_gamma_lower(n, x);
  if (lower.is_zero()) return LogProb::zero();
  const double log_coeff = point.log_density() + specfn::log_vn(n) +
                           0.5 * n * std::log(point.sigma2()) + 0.5 * n * std::numbers::ln2 +
                           specfn::log_gamma(n) - specfn::log_gamma(0.5 * n);
  return LogProb::from_log(log_coeff) * lower;
}

BoundValue ml_bound(const ChannelPoint& point, std::optional<double> r) {
  const double radius = r ? *r : effective_radius(point);
  return achievability(BoundKind::ml, ml_redundancy_term(point, radius), point, radius);
}

BoundValue typicality_bound(const ChannelPoint& point, std::optional<double> r) {
  double radius = 0.0;
  if (r) {
    radius = *r;
  } else {
    const double radicand = 1.0 + 2.0 * point.gap_nats();
    if (!(radicand > 0.0)) {
      throw DomainError("typicality_bound: default radius needs nld < delta* + 1/2");
    }
    radius = std::sqrt(point.sigma2() * point.n() * radicand);
  }
  check_radius(radius);
  const LogProb volume_term =
      LogProb::from_log(point.log_density() + specfn::log_vn(point.n()) + point.n() * std::log(radius));
  return achievability(BoundKind::typicality, volume_term, point, radius);
}

BoundValue poltyrev_ml_bound(const ChannelPoint& point) {
  const double r = std::sqrt(point.n() * point.sigma2()) * std::exp(point.gap_nats());
  BoundValue b = ml_bound(point, r);
  b.kind = BoundKind::poltyrev_r;
  return b;
}

double d_section_prob(int n, double r, double w, double sigma2) {
  if (n < 1) throw DomainError("d_section_prob: need n >= 1");
  check_sigma2(sigma2);
  if (!(r >= 0.0) || !(w >= 0.0) || w > 2.0 * r) {
    throw DomainError("d_section_prob: need 0 <= w <= 2r");
  }
  if (w == 2.0 * r) return 0.0;
  const double sigma = std::sqrt(sigma2);
  auto integrand = [&](double z) {
    const double density = specfn::gaussian_pdf(z / sigma) / sigma;
    if (n == 1) return density;
    const double rest = std::max(0.0, r * r - z * z);
    return density * specfn::reg_gamma_lower(0.5 * (n - 1), rest / (2.0 * sigma2));
  };
  quadrature::Options opt;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-12;
  const quadrature::Result res = quadrature::integrate(integrand, 0.5 * w, r, opt);
  if (!res.converged) throw ConvergenceError("d_section_prob: quadrature did not converge");
  return res.value;
}

EquivalenceResult equivalence_check(int n, double r, double sigma2) {
  if (n < 1) throw DomainError("equivalence_check: need n >= 1");
  check_radius(r);
  check_sigma2(sigma2);
  bool converged = true;
  auto outer = [&](double w) {
    try {
      return std::pow(w, n - 1) * d_section_prob(n, r, w, sigma2);
    } catch (const ConvergenceError&) {
      converged = false;
      return 0.0;
    }
  };
  const quadrature::Result lhs = quadrature::integrate(outer, 0.0, 2.0 * r);
  auto radial = [&](double t) {
    return t <= 0.0 ? 0.0 : std::exp(log_norm_density(n, t, sigma2) + n * std::log(t));
  };
  const quadrature::Result rhs = quadrature::integrate(radial, 0.0, r);
  const double lhs_value = n * lhs.value;
  return {lhs_value, rhs.value, std::fabs(lhs_value - rhs.value) / rhs.value,
          converged && lhs.converged && rhs.converged};
}

}  // namespace poltyrev
