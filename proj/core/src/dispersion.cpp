#include "poltyrev/dispersion.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "poltyrev/errors.hpp"
#include "poltyrev/quadrature.hpp"
#include "poltyrev/specfn.hpp"

namespace poltyrev {

namespace {

constexpr int kMaxBisection = 200;
constexpr int kMaxExpansion = 64;

void check_eps(double eps, const char* what) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw DomainError(std::string(what) + ": need eps in (0,1), got " + std::to_string(eps));
  }
}

void check_n(int n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": need n >= 1, got " + std::to_string(n));
}

double compute_T() {
  // The integrand has a kink at x = 1; integrate the two sides separately.
  auto f = [](double x) {
    const double v = (x * x - 1.0) / std::numbers::sqrt2;
    return std::fabs(v * v * v) * specfn::gaussian_pdf(x);
  };
  quadrature::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-13;
  const auto inner = quadrature::integrate(f, 0.0, 1.0, opt);
  const auto outer = quadrature::integrate(f, 1.0, std::numeric_limits<double>::infinity(), opt);
  if (!inner.converged || !outer.converged) {
    throw ConvergenceError("berry_esseen_T: quadrature did not converge");
  }
  return 2.0 * (inner.value + outer.value);
}

// Finds delta with log_bound(delta) = ln eps; log_bound must be strictly increasing.
InversionResult invert(const std::function<LogProb(double)>& bound, double eps, double sigma2,
                       double tol, const char* what) {
  check_eps(eps, what);
  if (!(tol > 0.0)) throw DomainError(std::string(what) + ": need tol > 0");
  const double target = std::log(eps);
  auto excess = [&](double delta) { return bound(delta).log() - target; };

  const double ds = delta_star(sigma2);
  double lo = ds - 3.0;
  double hi = ds + 1.0;
  int iterations = 0;
  for (double step = 1.0; excess(lo) >= 0.0; step *= 2.0) {
    if (++iterations > kMaxExpansion) {
      throw ConvergenceError(std::string(what) + ": no lower bracket for eps=" + std::to_string(eps));
    }
    hi = lo;
    lo -= step;
  }
  for (double step = 1.0; excess(hi) <= 0.0; step *= 2.0) {
    if (++iterations > kMaxExpansion) {
      throw ConvergenceError(std::string(what) + ": no upper bracket for eps=" + std::to_string(eps));
    }
    lo = hi;
    hi += step;
  }

  for (int it = 0; it < kMaxBisection; ++it) {
    ++iterations;
    const double mid = 0.5 * (lo + hi);
    const double e = excess(mid);
    if (e < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    const double width = hi - lo;
    // Past the nats tolerance, keep halving until the bound itself matches eps.
    const bool resolved = width <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(mid);
    if ((width <= tol && std::fabs(std::expm1(e)) <= 1e-12) || resolved) {
      return {mid, bound(mid), iterations, width};
    }
  }
  throw ConvergenceError(std::string(what) + ": bisection hit the iteration cap");
}

}  // namespace

NormTailApprox norm_tail_normal_approx(int n, double r, double sigma2) {
  check_n(n, "norm_tail_normal_approx");
  if (!(r > 0.0)) throw DomainError("norm_tail_normal_approx: need r > 0");
  if (!(sigma2 > 0.0)) throw DomainError("norm_tail_normal_approx: need sigma2 > 0");
  const double dn = n;
  const double arg = (r * r - dn * sigma2) / (sigma2 * std::sqrt(2.0 * dn));
  return {specfn::q_func(arg), 6.0 * berry_esseen_T() / std::sqrt(dn)};
}

double berry_esseen_T() {
  static const double value = compute_T();
  return value;
}

double nld_eps_approx(int n, double eps, double sigma2) {
  check_n(n, "nld_eps_approx");
  check_eps(eps, "nld_eps_approx");
  const double dn = n;
  return delta_star(sigma2) - std::sqrt(1.0 / (2.0 * dn)) * specfn::q_func_inv(eps) +
         std::log(dn) / (2.0 * dn);
}

InversionResult nld_eps_converse(int n, double eps, double sigma2, double tol) {
  check_n(n, "nld_eps_converse");
  return invert([&](double d) { return sphere_bound(ChannelPoint(n, d, sigma2)).raw; }, eps,
                sigma2, tol, "nld_eps_converse");
}

InversionResult nld_eps_achievable(int n, double eps, double sigma2, double tol) {
  check_n(n, "nld_eps_achievable");
  return invert([&](double d) { return ml_bound(ChannelPoint(n, d, sigma2)).raw; }, eps, sigma2,
                tol, "nld_eps_achievable");
}

double vnr_from_nld(double delta, double sigma2) {
  return std::exp(2.0 * (delta_star(sigma2) - delta));
}

double vnr_opt_approx(int n, double eps) {
  check_n(n, "vnr_opt_approx");
  check_eps(eps, "vnr_opt_approx");
  const double dn = n;
  return 1.0 + std::sqrt(2.0 / dn) * specfn::q_func_inv(eps) - std::log(dn) / dn;
}

double gap_db(double delta, double sigma2) {
  return 20.0 / std::numbers::ln10 * (delta_star(sigma2) - delta);
}

double lattice_snr_rho(const ChannelPoint& point) {
  return std::exp(2.0 * log_effective_radius(point) - std::log(static_cast<double>(point.n())) -
                  std::log(point.sigma2()));
}

double normalized_error_prob(double eps1, int n) {
  check_n(n, "normalized_error_prob");
  check_eps(eps1, "normalized_error_prob");
  return -std::expm1(n * std::log1p(-eps1));
}

}  // namespace poltyrev
