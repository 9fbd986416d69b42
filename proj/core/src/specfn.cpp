#include "poltyrev/specfn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "poltyrev/errors.hpp"

namespace poltyrev::specfn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 1'000'000;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// log1p(d) - d without the cancellation near d = 0.
double log1pmx(double d) {
  if (d <= -0.5 || d >= 1.0) return std::log1p(d) - d;
  // log1p(d) = 2 atanh(s) with s = d/(2+d); the leading 2s cancels against d.
  const double s = d / (2.0 + d);
  const double s2 = s * s;
  double term = s * s2;
  double sum = 0.0;
  for (int k = 3; k < 200; k += 2) {
    const double add = term / k;
    sum += add;
    if (std::fabs(add) <= kEps * std::fabs(sum)) break;
    term *= s2;
  }
  return -d * s + 2.0 * sum;
}

// ln Gamma(a+1) - [(a + 1/2) ln a - a + ln sqrt(2 pi)], the Stirling remainder.
double stirlerr(double a) {
  if (a >= 15.0) {
    const double r = 1.0 / a;
    const double r2 = r * r;
    return r * (1.0 / 12 - r2 * (1.0 / 360 - r2 * (1.0 / 1260 - r2 * (1.0 / 1680 - r2 / 1188))));
  }
  return log_gamma(a + 1.0) - ((a + 0.5) * std::log(a) - a + kLogSqrt2Pi);
}

// ln(x^a e^-x / Gamma(a)).
double log_prefactor(double a, double x) {
  if (a < 15.0) return a * std::log(x) - x - log_gamma(a);
  const double d = (x - a) / a;
  return a * log1pmx(d) + 0.5 * std::log(a) - kLogSqrt2Pi - stirlerr(a);
}

// Sum_{k>=0} x^k / ((a+1)...(a+k)); P(a,x) = prefactor * sum / a.
double lower_series(double a, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < kMaxIter; ++k) {
    term *= x / (a + k);
    sum += term;
    if (term <= kEps * sum) return sum;
  }
  throw ConvergenceError("reg_gamma: series did not converge for a=" + std::to_string(a) +
                         " x=" + std::to_string(x));
}

// Modified Lentz evaluation of the continued fraction with Q(a,x) = prefactor * cf.
double upper_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) <= 3.0 * kEps) return h;
  }
  throw ConvergenceError("reg_gamma: continued fraction did not converge for a=" +
                         std::to_string(a) + " x=" + std::to_string(x));
}

void check_gamma_args(double a, double x) {
  if (!(a > 0.0) || std::isinf(a) || !(x >= 0.0)) {
    throw DomainError("reg_gamma: need a > 0 finite and x >= 0, got a=" + std::to_string(a) +
                      " x=" + std::to_string(x));
  }
}

struct GammaPair {
  double log_p;
  double log_q;
};

// Both tails in log domain; one is computed directly, the other as its complement.
GammaPair gamma_tails(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return {-kInf, 0.0};
  if (x == kInf) return {0.0, -kInf};
  if (x <= a + 1.0) {
    const double log_p = log_prefactor(a, x) - std::log(a) + std::log(lower_series(a, x));
    const double p = std::exp(log_p);
    return {log_p, p >= 1.0 ? -kInf : std::log1p(-p)};
  }
  const double log_q = log_prefactor(a, x) + std::log(upper_fraction(a, x));
  const double q = std::exp(log_q);
  return {q >= 1.0 ? -kInf : std::log1p(-q), log_q};
}

// 1/sqrt(2) split into a double and its rounding error.
constexpr double kRsqrt2Hi = 0.7071067811865476;
constexpr double kRsqrt2Lo = -4.833646656726457e-17;

// Q(x)/phi(x) by backward recursion of x + 1/(x + 2/(x + ...)); only used for x >= 20.
double mills_ratio(double x) {
  double t = x;
  for (int k = 120; k >= 1; --k) t = x + k / t;
  return 1.0 / t;
}

// Acklam's rational approximation of the lower-tail normal quantile.
double acklam_lower_quantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log1p(-p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: need x > 0, got " + std::to_string(x));
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double log_vn(int n) {
  if (n < 1) throw DomainError("log_vn: need n >= 1, got " + std::to_string(n));
  return 0.5 * n * std::log(std::numbers::pi) - log_gamma(0.5 * n + 1.0);
}

double log_vn_asymptotic(int n) {
  if (n < 1) throw DomainError("log_vn_asymptotic: need n >= 1, got " + std::to_string(n));
  const double dn = n;
  return 0.5 * dn * std::log(2.0 * std::numbers::pi * std::numbers::e / dn) -
         0.5 * std::log(dn * std::numbers::pi);
}

double reg_gamma_upper(double a, double x) { return std::exp(gamma_tails(a, x).log_q); }

LogProb log_reg_gamma_upper(double a, double x) {
  return LogProb::from_log(gamma_tails(a, x).log_q);
}

double reg_gamma_lower(double a, double x) { return std::exp(gamma_tails(a, x).log_p); }

LogProb log_reg_gamma_lower(double a, double x) {
  return LogProb::from_log(gamma_tails(a, x).log_p);
}

double q_func(double x) {
  if (std::isnan(x)) throw DomainError("q_func: NaN argument");
  // erfc(t + e) ~ erfc(t) - e * 2/sqrt(pi) * exp(-t^2) recovers the bits lost in x/sqrt(2).
  const double t = x * kRsqrt2Hi;
  const double e = std::fma(x, kRsqrt2Hi, -t) + x * kRsqrt2Lo;
  return 0.5 * std::erfc(t) - e * std::exp(-t * t) / std::sqrt(std::numbers::pi);
}

double log_q_func(double x) {
  if (std::isnan(x)) throw DomainError("log_q_func: NaN argument");
  if (x < 0.0) return std::log1p(-q_func(-x));
  if (x < 20.0) return std::log(q_func(x));
  return -0.5 * x * x - kLogSqrt2Pi + std::log(mills_ratio(x));
}

double log_q_scaled(double x) {
  if (std::isnan(x)) throw DomainError("log_q_scaled: NaN argument");
  if (x < 20.0) return log_q_func(x) + 0.5 * x * x;
  return -kLogSqrt2Pi + std::log(mills_ratio(x));
}

double gaussian_pdf(double x) { return std::exp(-0.5 * x * x - kLogSqrt2Pi); }

double q_func_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("q_func_inv: need p in (0,1), got " + std::to_string(p));
  }
  // 1 - p is exact for p >= 1/2, so the reflection loses nothing.
  if (p > 0.5) return -q_func_inv(1.0 - p);
  double x = -acklam_lower_quantile(p);
  if (p > 1e-200) {
    for (int i = 0; i < 2; ++i) x += (q_func(x) - p) / gaussian_pdf(x);
  } else {
    // Newton on ln Q: d/dx ln Q(x) = -phi(x)/Q(x).
    const double log_p = std::log(p);
    for (int i = 0; i < 2; ++i) {
      const double log_q = log_q_func(x);
      x += (log_q - log_p) * std::exp(log_q + 0.5 * x * x + kLogSqrt2Pi);
    }
  }
  return x;
}

}  // namespace poltyrev::specfn
