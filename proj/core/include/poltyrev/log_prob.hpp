#pragma once

#include <cmath>
#include <compare>
#include <limits>

namespace poltyrev {

/// A nonnegative real carried by its natural logarithm.
///
/// Every bound in the library is produced as a LogProb so that values far
/// below the double-precision underflow threshold (e^-700 and beyond, which
/// is routine for n in the thousands) keep full relative accuracy. Exact zero
/// is a separate state rather than -inf so that `log_value` is always finite.
///
/// A LogProb is not required to be at most one: unclamped bounds and the
/// integrals feeding them are carried in the same type.
class LogProb {
 public:
  constexpr LogProb() = default;

  static constexpr LogProb zero() { return LogProb(0.0, true); }
  static constexpr LogProb one() { return LogProb(0.0, false); }

  /// From a natural logarithm. -inf maps to zero; NaN and +inf are rejected.
  static LogProb from_log(double log_value);

  /// From a linear value v >= 0.
  static LogProb from_linear(double value);

  [[nodiscard]] constexpr bool is_zero() const { return is_zero_; }

  /// ln of the value; never called on zero without a check, returns -inf then.
  [[nodiscard]] double log() const {
    return is_zero_ ? -std::numeric_limits<double>::infinity() : log_value_;
  }

  /// exp(log); may exceed one, may underflow to 0.
  [[nodiscard]] double linear() const { return is_zero_ ? 0.0 : std::exp(log_value_); }

  /// The value clamped to [0, 1].
  [[nodiscard]] double probability() const {
    if (is_zero_) return 0.0;
    if (log_value_ >= 0.0) return 1.0;
    return std::exp(log_value_);
  }

  /// min(value, 1).
  [[nodiscard]] LogProb clamped() const {
    return (!is_zero_ && log_value_ > 0.0) ? one() : *this;
  }

  friend LogProb operator*(LogProb a, LogProb b) {
    if (a.is_zero_ || b.is_zero_) return zero();
    return LogProb(a.log_value_ + b.log_value_, false);
  }
  friend LogProb operator/(LogProb a, LogProb b);
  friend LogProb operator+(LogProb a, LogProb b);

  friend std::partial_ordering operator<=>(const LogProb& a, const LogProb& b) {
    return a.log() <=> b.log();
  }
  friend bool operator==(const LogProb& a, const LogProb& b) {
    return a.is_zero_ == b.is_zero_ && (a.is_zero_ || a.log_value_ == b.log_value_);
  }

 private:
  constexpr LogProb(double log_value, bool is_zero) : log_value_(log_value), is_zero_(is_zero) {}

  double log_value_ = 0.0;
  bool is_zero_ = true;
};

/// ln(exp(a) + exp(b)) without overflow.
double log_add(double a, double b);

}  // namespace poltyrev
