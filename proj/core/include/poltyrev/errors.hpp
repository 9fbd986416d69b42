#pragma once

#include <stdexcept>
#include <string>

namespace poltyrev {

/// An argument lies outside the domain of the operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative method (series, continued fraction, bisection, quadrature)
/// did not reach its stopping rule within its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested lattice has no exact nearest-point decoder.
class UnsupportedLattice : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace poltyrev
