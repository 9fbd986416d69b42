#pragma once

#include "poltyrev/bounds.hpp"
#include "poltyrev/log_prob.hpp"

namespace poltyrev {

/// Derived quantities of the sandwich bounds at a channel point.
struct AsymptoticTerms {
  double rho_star;  // r_eff^2 / (n sigma^2)
  double upsilon;   // n (rho* - 1 + 2/n) / sqrt(2 (n - 2))
  double psi;       // sqrt(n) (2 - rho* + 2/n) / (2 sqrt(rho*))
  double mu;        // e^{2 (delta* - delta)}
};

/// Two lower bounds (Q-function and elementary) and an upper bound on an exact
/// quantity; lower_analytic <= lower_q <= upper.
struct SandwichBounds {
  LogProb lower_q;
  LogProb lower_analytic;
  LogProb upper;
};

enum class NldRegime { below_critical, critical, above_critical };

std::string_view to_string(NldRegime regime);

/// An asymptotic form. `infinite` is set where the form has a pole (mu -> 1,
/// mu -> 2) or is evaluated outside its regime; `value` is then meaningless.
struct AsymptoticValue {
  LogProb value;
  bool infinite = false;
  NldRegime regime = NldRegime::above_critical;
};

/// Sphere-packing exponent; zero at and above delta*.
double exponent_sp(double delta, double sigma2);
/// Random-coding exponent: E_sp on [delta_cr, delta*), the line
/// (delta* - delta) + ln(e/4)/2 below delta_cr, zero above delta*.
double exponent_r(double delta, double sigma2);
/// Typicality exponent (delta* - delta) - ln(1 + 2(delta* - delta))/2.
double exponent_t(double delta, double sigma2);

/// Regime of delta relative to delta_cr; `critical` within 1e-9 nats.
NldRegime regime_of(double delta, double sigma2);

AsymptoticTerms terms(const ChannelPoint& point);

SandwichBounds sphere_sandwich(const ChannelPoint& point);
/// Requires 1 - 2/n < rho* < 2 - 2/n.
SandwichBounds ml_sandwich(const ChannelPoint& point);

AsymptoticValue sphere_asymptotic(const ChannelPoint& point);
AsymptoticValue ml_asymptotic(const ChannelPoint& point);
AsymptoticValue typicality_asymptotic(const ChannelPoint& point);
AsymptoticValue poltyrev_r_asymptotic(const ChannelPoint& point);

/// Limit of ml_bound / sphere_bound for delta in (delta_cr, delta*).
double ub_lb_ratio_limit(double delta, double sigma2);

/// Bounds on int_x^inf t^{n/2-1} e^{-n t/2} dt for x > 1 - 2/n.
/// lower_loose is zero once Upsilon <= 1.
struct TailIntegralBounds {
  LogProb lower_q;
  LogProb lower_analytic;
  LogProb lower_loose;
  LogProb upper;
};
TailIntegralBounds tail_integral_bounds(int n, double x);

/// Bounds on int_0^x e^{-n t/2} t^{n-1} dt for 0 < x < 2 - 2/n.
struct HeadIntegralBounds {
  LogProb lower_q;
  LogProb lower_analytic;
  LogProb upper;
};
HeadIntegralBounds head_integral_bounds(int n, double x);

/// Leading Laplace term sqrt(2 pi / n) e^{-n} 2^n of the head integral for x > 2.
LogProb laplace_head_integral(int n, double x);

}  // namespace poltyrev
