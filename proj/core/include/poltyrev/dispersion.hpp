#pragma once

#include "poltyrev/bounds.hpp"
#include "poltyrev/log_prob.hpp"

namespace poltyrev {

struct NormTailApprox {
  double approx;     // Q((r^2 - n sigma^2) / (sigma^2 sqrt(2n)))
  double guarantee;  // 6 T / sqrt(n) bound on |Pr{|Z| > r} - approx|
};

NormTailApprox norm_tail_normal_approx(int n, double r, double sigma2);

/// E|((X^2 - 1)/sqrt(2))^3| for standard Gaussian X. Evaluated by quadrature on
/// first use and cached.
double berry_esseen_T();

/// delta* - sqrt(1/(2n)) Q^{-1}(eps) + ln(n)/(2n).
double nld_eps_approx(int n, double eps, double sigma2);

struct InversionResult {
  double delta;
  LogProb bound_value;  // unclamped bound at delta
  int iterations;
  double bracket_width;
};

constexpr double kDefaultInversionTol = 1e-10;

/// The delta at which sphere_bound equals eps.
InversionResult nld_eps_converse(int n, double eps, double sigma2,
                                 double tol = kDefaultInversionTol);
/// The delta at which ml_bound (default radius) equals eps.
InversionResult nld_eps_achievable(int n, double eps, double sigma2,
                                   double tol = kDefaultInversionTol);

/// mu = e^{2(delta* - delta)}.
double vnr_from_nld(double delta, double sigma2);

/// 1 + sqrt(2/n) Q^{-1}(eps) - ln(n)/n.
double vnr_opt_approx(int n, double eps);

/// 10 log10(mu), i.e. 8.6858896 dB per nat of gap to delta*.
double gap_db(double delta, double sigma2);

/// r_eff^2 / (n sigma^2).
double lattice_snr_rho(const ChannelPoint& point);

/// 1 - (1 - eps1)^n.
double normalized_error_prob(double eps1, int n);

}  // namespace poltyrev
