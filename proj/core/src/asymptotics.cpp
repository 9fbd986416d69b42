#include "poltyrev/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "poltyrev/errors.hpp"
#include "poltyrev/specfn.hpp"

namespace poltyrev {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCriticalTol = 1e-9;

void require_dimension(int n, const char* what) {
  if (n <= 2) throw DomainError(std::string(what) + ": need n > 2, got " + std::to_string(n));
}

double log1p_inv_sq(double t) { return std::log1p(1.0 / (t * t)); }

// ln C with C = e^{n(delta* - delta)} e^{n/2} e^{-n rho*/2}, common to both sandwiches.
double log_common_factor(const ChannelPoint& p, const AsymptoticTerms& t) {
  const int n = p.n();
  return n * p.gap_nats() + 0.5 * n - 0.5 * n * t.rho_star;
}

AsymptoticValue pole() { return {LogProb::zero(), true, NldRegime::above_critical}; }

}  // namespace

std::string_view to_string(NldRegime regime) {
  switch (regime) {
    case NldRegime::below_critical: return "below_critical";
    case NldRegime::critical: return "critical";
    case NldRegime::above_critical: return "above_critical";
  }
  return "unknown";
}

double exponent_sp(double delta, double sigma2) {
  const double gap = delta_star(sigma2) - delta;
  if (gap <= 0.0) return 0.0;
  // (e^{2g} - 1 - 2g)/2 via expm1 to keep the small-gap end accurate.
  return 0.5 * (std::expm1(2.0 * gap) - 2.0 * gap);
}

double exponent_r(double delta, double sigma2) {
  const double gap = delta_star(sigma2) - delta;
  if (gap <= 0.0) return 0.0;
  if (delta >= delta_cr(sigma2)) return exponent_sp(delta, sigma2);
  return gap + 0.5 * (1.0 - 2.0 * std::numbers::ln2);
}

double exponent_t(double delta, double sigma2) {
  const double gap = delta_star(sigma2) - delta;
  if (!(1.0 + 2.0 * gap > 0.0)) {
    throw DomainError("exponent_t: need delta < delta* + 1/2");
  }
  if (gap <= 0.0) return 0.0;
  return gap - 0.5 * std::log1p(2.0 * gap);
}

NldRegime regime_of(double delta, double sigma2) {
  const double d = delta - delta_cr(sigma2);
  if (std::fabs(d) <= kCriticalTol) return NldRegime::critical;
  return d > 0.0 ? NldRegime::above_critical : NldRegime::below_critical;
}

AsymptoticTerms terms(const ChannelPoint& point) {
  const int n = point.n();
  require_dimension(n, "terms");
  const double dn = n;
  const double rho =
      std::exp(2.0 * log_effective_radius(point) - std::log(dn) - std::log(point.sigma2()));
  AsymptoticTerms t{};
  t.rho_star = rho;
  t.upsilon = dn * (rho - 1.0 + 2.0 / dn) / std::sqrt(2.0 * (dn - 2.0));
  t.psi = std::sqrt(dn) * (2.0 - rho + 2.0 / dn) / (2.0 * std::sqrt(rho));
  t.mu = std::exp(2.0 * point.gap_nats());
  return t;
}

SandwichBounds sphere_sandwich(const ChannelPoint& point) {
  require_dimension(point.n(), "sphere_sandwich");
  if (!(point.gap_nats() > 0.0)) throw DomainError("sphere_sandwich: need delta < delta*");
  const AsymptoticTerms t = terms(point);
  const double dn = point.n();
  const double slack = t.rho_star - 1.0 + 2.0 / dn;
  if (!(slack > 0.0)) throw DomainError("sphere_sandwich: need rho* > 1 - 2/n");
  const double log_c = log_common_factor(point, t);
  const double log_upper = log_c - std::log(slack);
  SandwichBounds s;
  s.upper = LogProb::from_log(log_upper);
  s.lower_analytic = LogProb::from_log(log_upper - log1p_inv_sq(t.upsilon));
  s.lower_q = LogProb::from_log(log_c + specfn::log_q_scaled(t.upsilon) +
                                0.5 * std::log(dn * dn * kPi / (dn - 2.0)));
  return s;
}

SandwichBounds ml_sandwich(const ChannelPoint& point) {
  require_dimension(point.n(), "ml_sandwich");
  const AsymptoticTerms t = terms(point);
  const double dn = point.n();
  if (!(point.gap_nats() > 0.0)) throw DomainError("ml_sandwich: need delta < delta*");
  if (!(t.rho_star > 1.0 - 2.0 / dn && t.rho_star < 2.0 - 2.0 / dn)) {
    throw DomainError("ml_sandwich: rho* = " + std::to_string(t.rho_star) +
                      " outside (1 - 2/n, 2 - 2/n)");
  }
  const double log_c = log_common_factor(point, t);
  const double below = t.rho_star - 1.0 + 2.0 / dn;
  const double above = 2.0 - t.rho_star - 2.0 / dn;
  SandwichBounds s;
  s.upper = LogProb::from_log(log_c - std::log(above) - std::log(below));
  const LogProb head_q = LogProb::from_log(specfn::log_q_scaled(t.psi) +
                                           0.5 * std::log(dn * kPi / (2.0 * t.rho_star)));
  const LogProb tail_q = LogProb::from_log(specfn::log_q_scaled(t.upsilon) +
                                           0.5 * std::log(dn * dn * kPi / (dn - 2.0)));
  s.lower_q = LogProb::from_log(log_c) * (head_q + tail_q);
  const LogProb head_a = LogProb::from_log(-std::log(2.0 - t.rho_star + 2.0 / dn) - log1p_inv_sq(t.psi));
  const LogProb tail_a = LogProb::from_log(-std::log(below) - log1p_inv_sq(t.upsilon));
  s.lower_analytic = LogProb::from_log(log_c) * (head_a + tail_a);
  return s;
}

AsymptoticValue sphere_asymptotic(const ChannelPoint& point) {
  const double dn = point.n();
  const double mu = std::exp(2.0 * point.gap_nats());
  const double mu_m1 = std::expm1(2.0 * point.gap_nats());
  if (!(mu_m1 > 0.0)) return pole();
  const double e = exponent_sp(point.nld(), point.sigma2());
  return {LogProb::from_log(-dn * e - 0.5 * mu * std::log(dn * kPi) - std::log(mu_m1)), false,
          regime_of(point.nld(), point.sigma2())};
}

AsymptoticValue ml_asymptotic(const ChannelPoint& point) {
  const double dn = point.n();
  const double gap = point.gap_nats();
  if (!(gap > 0.0)) return pole();
  const NldRegime regime = regime_of(point.nld(), point.sigma2());
  const double base = -dn * exponent_r(point.nld(), point.sigma2());
  double log_value = 0.0;
  switch (regime) {
    case NldRegime::below_critical:
      log_value = base - 0.5 * std::log(2.0 * kPi * dn);
      break;
    case NldRegime::critical:
      log_value = base - std::log(2.0 * kPi) +
                  std::log(std::sqrt(kPi / (2.0 * dn)) + std::log(dn * kPi * std::exp(2.0)) / dn);
      break;
    case NldRegime::above_critical: {
      const double mu = std::exp(2.0 * gap);
      const double mu_m1 = std::expm1(2.0 * gap);
      if (!(mu_m1 > 0.0) || !(2.0 - mu > 0.0)) return {LogProb::zero(), true, regime};
      log_value = base - 0.5 * mu * std::log(dn * kPi) - std::log(2.0 - mu) - std::log(mu_m1);
      break;
    }
  }
  return {LogProb::from_log(log_value), false, regime};
}

AsymptoticValue typicality_asymptotic(const ChannelPoint& point) {
  const double dn = point.n();
  const double gap = point.gap_nats();
  if (!(gap > 0.0)) return pole();
  const double e = exponent_t(point.nld(), point.sigma2());
  return {LogProb::from_log(-dn * e - 0.5 * std::log(dn * kPi) +
                            std::log((1.0 + 2.0 * gap) / (2.0 * gap))),
          false, regime_of(point.nld(), point.sigma2())};
}

AsymptoticValue poltyrev_r_asymptotic(const ChannelPoint& point) {
  const double dn = point.n();
  const double gap = point.gap_nats();
  if (!(gap > 0.0)) return pole();
  const NldRegime regime = regime_of(point.nld(), point.sigma2());
  if (regime == NldRegime::below_critical) return ml_asymptotic(point);
  const double base = -dn * exponent_r(point.nld(), point.sigma2());
  if (regime == NldRegime::critical) {
    return {LogProb::from_log(base - 0.5 * std::log(kPi * dn) + std::log1p(1.0 / std::sqrt(8.0))),
            false, regime};
  }
  const double mu = std::exp(2.0 * gap);
  const double mu_m1 = std::expm1(2.0 * gap);
  if (!(mu_m1 > 0.0) || !(2.0 - mu > 0.0)) return {LogProb::zero(), true, regime};
  const double bracket = 1.0 / (dn * kPi * (2.0 - mu)) + 1.0 / (std::sqrt(dn * kPi) * mu_m1);
  return {LogProb::from_log(base + std::log(bracket)), false, regime};
}

double ub_lb_ratio_limit(double delta, double sigma2) {
  if (!(delta > delta_cr(sigma2) && delta < delta_star(sigma2))) {
    throw DomainError("ub_lb_ratio_limit: need delta_cr < delta < delta*");
  }
  return 1.0 / (2.0 - std::exp(2.0 * (delta_star(sigma2) - delta)));
}

TailIntegralBounds tail_integral_bounds(int n, double x) {
  require_dimension(n, "tail_integral_bounds");
  const double dn = n;
  const double slack = x - 1.0 + 2.0 / dn;
  if (!(x > 1.0 - 2.0 / dn) || !(slack > 0.0) || std::isinf(x)) {
    throw DomainError("tail_integral_bounds: need x > 1 - 2/n");
  }
  const double upsilon = dn * slack / std::sqrt(2.0 * (dn - 2.0));
  const double log_core = std::numbers::ln2 + 0.5 * dn * std::log(x) - 0.5 * dn * x;
  const double log_upper = log_core - std::log(dn * slack);
  TailIntegralBounds b;
  b.upper = LogProb::from_log(log_upper);
  b.lower_q = LogProb::from_log(log_core + specfn::log_q_scaled(upsilon) +
                                0.5 * std::log(kPi / (dn - 2.0)));
  b.lower_analytic = LogProb::from_log(log_upper - log1p_inv_sq(upsilon));
  const double loose = 1.0 - 1.0 / (upsilon * upsilon);
  b.lower_loose = loose > 0.0 ? LogProb::from_log(log_upper + std::log(loose)) : LogProb::zero();
  return b;
}

HeadIntegralBounds head_integral_bounds(int n, double x) {
  require_dimension(n, "head_integral_bounds");
  const double dn = n;
  if (!(x > 0.0 && x < 2.0 - 2.0 / dn)) {
    throw DomainError("head_integral_bounds: need 0 < x < 2 - 2/n");
  }
  const double psi = std::sqrt(dn) * (2.0 - x + 2.0 / dn) / (2.0 * std::sqrt(x));
  const double log_core = dn * std::log(x) - 0.5 * dn * x;
  HeadIntegralBounds b;
  b.upper = LogProb::from_log(std::numbers::ln2 + log_core - std::log(dn * (2.0 - x - 2.0 / dn)) +
                              std::log(-std::expm1(-dn * (1.0 - 1.0 / dn - 0.5 * x))));
  b.lower_q = LogProb::from_log(log_core + specfn::log_q_scaled(psi) +
                                0.5 * std::log(2.0 * kPi / (dn * x)));
  b.lower_analytic = LogProb::from_log(std::numbers::ln2 + log_core -
                                       std::log(dn * (2.0 - x + 2.0 / dn)) - log1p_inv_sq(psi));
  return b;
}

LogProb laplace_head_integral(int n, double x) {
  if (n < 1) throw DomainError("laplace_head_integral: need n >= 1");
  if (!(x > 2.0)) throw DomainError("laplace_head_integral: need x > 2");
  const double dn = n;
  return LogProb::from_log(0.5 * std::log(2.0 * kPi / dn) - dn + dn * std::numbers::ln2);
}

}  // namespace poltyrev
