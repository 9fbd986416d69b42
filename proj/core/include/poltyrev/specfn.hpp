#pragma once

#include "poltyrev/log_prob.hpp"

namespace poltyrev::specfn {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// ln V_n, the log-volume of the unit ball in n dimensions.
double log_vn(int n);

/// Leading Stirling form (n/2) ln(2 pi e / n) - (1/2) ln(n pi) of ln V_n.
/// Differs from log_vn by about -1/(6n).
double log_vn_asymptotic(int n);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
///
/// Series for x <= a + 1, Lentz continued fraction above. Pr{chi^2_n > t}
/// is reg_gamma_upper(n / 2, t / 2).
double reg_gamma_upper(double a, double x);
LogProb log_reg_gamma_upper(double a, double x);

/// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
double reg_gamma_lower(double a, double x);
LogProb log_reg_gamma_lower(double a, double x);

/// Gaussian tail Q(x) = Pr{N(0,1) > x}.
double q_func(double x);

/// ln Q(x), accurate far into the tail (x in the thousands).
double log_q_func(double x);

/// ln(e^{x^2/2} Q(x)); bounded by ln(1 / (x sqrt(2 pi))) for large x.
double log_q_scaled(double x);

/// Inverse of q_func on (0, 1).
double q_func_inv(double p);

/// Standard Gaussian density.
double gaussian_pdf(double x);

}  // namespace poltyrev::specfn
