#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace occupancy {

/// A nonnegative real number stored as its natural logarithm.
///
/// Multiplication is addition of logs; addition uses max-shifted
/// log-sum-exp and is exact when either operand is zero. Zero is stored
/// as log = -infinity. The carrier for quantities such as C(S,R-1)^m or
/// C(10^6, 10^3) that overflow any fixed-width float.
class LogReal {
 public:
  LogReal() : log_(-inf()) {}

  static LogReal zero() { return LogReal(); }
  static LogReal one() { return from_log(0.0); }

  static LogReal from_log(double log_magnitude) {
    LogReal r;
    r.log_ = log_magnitude;
    return r;
  }

  /// v must be >= 0; v == 0 maps to the zero element.
  static LogReal from_value(double v) {
    LogReal r;
    r.log_ = v > 0.0 ? std::log(v) : -inf();
    return r;
  }

  bool is_zero() const { return log_ == -inf(); }

  /// Natural log of the magnitude; -infinity for zero.
  double log() const { return log_; }

  /// Converts back to double; may underflow to 0 or overflow to +inf.
  double value() const { return is_zero() ? 0.0 : std::exp(log_); }

  LogReal& operator*=(const LogReal& o) {
    if (is_zero() || o.is_zero()) {
      log_ = -inf();
    } else {
      log_ += o.log_;
    }
    return *this;
  }

  LogReal& operator/=(const LogReal& o) {
    // Division by zero is the caller's bug; let the IEEE inf propagate.
    if (is_zero()) return *this;
    log_ -= o.log_;
    return *this;
  }

  LogReal& operator+=(const LogReal& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      log_ = o.log_;
      return *this;
    }
    const double hi = std::max(log_, o.log_);
    const double lo = std::min(log_, o.log_);
    log_ = hi + std::log1p(std::exp(lo - hi));
    return *this;
  }

  friend LogReal operator*(LogReal a, const LogReal& b) { return a *= b; }
  friend LogReal operator/(LogReal a, const LogReal& b) { return a /= b; }
  friend LogReal operator+(LogReal a, const LogReal& b) { return a += b; }

  friend bool operator<(const LogReal& a, const LogReal& b) { return a.log_ < b.log_; }
  friend bool operator>(const LogReal& a, const LogReal& b) { return b < a; }
  friend bool operator<=(const LogReal& a, const LogReal& b) { return !(b < a); }
  friend bool operator>=(const LogReal& a, const LogReal& b) { return !(a < b); }

  /// Sum of a batch of terms with a single max shift, so the relative
  /// error stays bounded by n*eps regardless of the addends' spread.
  static LogReal sum(const std::vector<LogReal>& terms) {
    double hi = -inf();
    for (const LogReal& t : terms) hi = std::max(hi, t.log_);
    if (hi == -inf()) return zero();
    double acc = 0.0;
    for (const LogReal& t : terms) {
      if (!t.is_zero()) acc += std::exp(t.log_ - hi);
    }
    return from_log(hi + std::log(acc));
  }

 private:
  static constexpr double inf() { return std::numeric_limits<double>::infinity(); }

  double log_;
};

}  // namespace occupancy
