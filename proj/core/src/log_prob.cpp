#include "poltyrev/log_prob.hpp"

#include "poltyrev/errors.hpp"

namespace poltyrev {

LogProb LogProb::from_log(double log_value) {
  if (std::isnan(log_value) || log_value == std::numeric_limits<double>::infinity()) {
    throw DomainError("LogProb::from_log: log value must be finite or -inf");
  }
  if (log_value == -std::numeric_limits<double>::infinity()) return zero();
  return LogProb(log_value, false);
}

LogProb LogProb::from_linear(double value) {
  if (!(value >= 0.0) || std::isinf(value)) {
    throw DomainError("LogProb::from_linear: value must be finite and nonnegative");
  }
  if (value == 0.0) return zero();
  return LogProb(std::log(value), false);
}

LogProb operator/(LogProb a, LogProb b) {
  if (b.is_zero_) throw DomainError("LogProb: division by zero");
  if (a.is_zero_) return LogProb::zero();
  return LogProb(a.log_value_ - b.log_value_, false);
}

LogProb operator+(LogProb a, LogProb b) {
  if (a.is_zero_) return b;
  if (b.is_zero_) return a;
  return LogProb(log_add(a.log_value_, b.log_value_), false);
}

double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

}  // namespace poltyrev
