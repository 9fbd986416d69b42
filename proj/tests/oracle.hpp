#pragma once

// Reference values computed through GSL, independent of the library under test.

#include <gsl/gsl_cdf.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>
#include <gsl/gsl_sf_gamma.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

inline void quiet_gsl() { gsl_set_error_handler_off(); }

inline double gamma_q(double a, double x) { return gsl_sf_gamma_inc_Q(a, x); }
inline double gamma_p(double a, double x) { return gsl_sf_gamma_inc_P(a, x); }
inline double lngamma(double x) { return gsl_sf_lngamma(x); }
inline double gauss_q(double x) { return gsl_cdf_ugaussian_Q(x); }
inline double gauss_qinv(double p) { return gsl_cdf_ugaussian_Qinv(p); }

// ln V_n through GSL's log-gamma.
inline double log_vn(int n) { return 0.5 * n * std::log(M_PI) - lngamma(0.5 * n + 1.0); }

// QAGS on [a, b] (QAGIU when b is infinite); relative tolerance rel.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel = 1e-12, double abs = 0.0) {
  quiet_gsl();
  gsl_integration_workspace* w = gsl_integration_workspace_alloc(4000);
  gsl_function F;
  F.function = [](double x, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(x); };
  F.params = const_cast<std::function<double(double)>*>(&f);
  double result = 0.0;
  double error = 0.0;
  int status = 0;
  if (std::isinf(b)) {
    status = gsl_integration_qagiu(&F, a, abs, rel, 4000, w, &result, &error);
  } else {
    status = gsl_integration_qags(&F, a, b, abs, rel, 4000, w, &result, &error);
  }
  gsl_integration_workspace_free(w);
  if (status != GSL_SUCCESS && status != GSL_EROUND) {
    throw std::runtime_error(std::string("oracle::integrate: ") + gsl_strerror(status));
  }
  return result;
}

// Pr{|Z| > r} for Z ~ N(0, sigma2 I_n).
inline double norm_tail(int n, double r, double sigma2) { return gamma_q(0.5 * n, r * r / (2.0 * sigma2)); }

// ln of the sphere bound at (n, delta, sigma2) from first principles.
inline double log_r_eff(int n, double delta) { return -delta - log_vn(n) / n; }

inline double delta_star(double sigma2) { return -0.5 * std::log(2.0 * M_PI * M_E * sigma2); }

// e^{n delta} V_n int_0^r f_R(t) t^n dt by direct quadrature of the density.
inline double ml_first_term(int n, double delta, double sigma2, double r) {
  const double log_front = n * delta + log_vn(n) - (0.5 * n - 1.0) * std::log(2.0) -
                           0.5 * n * std::log(sigma2) - lngamma(0.5 * n);
  // Factor the peak out of the integrand so GSL works with O(1) values.
  const double t_peak = std::min(r, std::sqrt((2.0 * n - 1.0) * sigma2));
  const double log_peak = (2.0 * n - 1.0) * std::log(t_peak) - t_peak * t_peak / (2.0 * sigma2);
  auto f = [&](double t) {
    if (t <= 0.0) return 0.0;
    return std::exp((2.0 * n - 1.0) * std::log(t) - t * t / (2.0 * sigma2) - log_peak);
  };
  return std::exp(log_front + log_peak) * integrate(f, 0.0, r, 1e-13);
}

}  // namespace oracle
