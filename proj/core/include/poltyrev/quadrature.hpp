#pragma once

#include <functional>

namespace poltyrev::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;  // Kronrod-minus-Gauss estimate summed over subintervals
  int evaluations = 0;
  bool converged = false;
};

struct Options {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  int max_subintervals = 4000;
};

/// Adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
/// Either endpoint may be infinite. The worst subinterval is bisected until
/// the total error estimate is below max(abs_tol, rel_tol * |value|).
/// Never throws on non-convergence; the flag is cleared instead.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& options = {});

}  // namespace poltyrev::quadrature
