#pragma once

#include <cmath>
#include <limits>

#include "ckstk/errors.hpp"

namespace ckstk {

// A nonnegative real carried as its natural logarithm. The value 0 is the
// explicit state log = -inf. This is the numeric currency of the library:
// transform values, factorials and weight sequences span thousands of orders
// of magnitude and never materialize in plain scale.
class LogValue {
public:
  constexpr LogValue() : lg_(-std::numeric_limits<double>::infinity()) {}

  static constexpr LogValue zero() { return LogValue(); }
  static constexpr LogValue one() { return from_log_unchecked(0.0); }

  static LogValue from_log(double lg) {
    if (std::isnan(lg) || lg == std::numeric_limits<double>::infinity())
      throw NonFinite("LogValue::from_log: log must be finite or -inf");
    LogValue v;
    v.lg_ = lg;
    return v;
  }

  static LogValue from_real(double x) {
    if (std::isnan(x) || x < 0.0)
      throw BadParam("LogValue::from_real: value must be a nonnegative real");
    LogValue v;
    v.lg_ = x == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(x);
    return v;
  }

  double log() const { return lg_; }
  double to_real() const { return std::exp(lg_); }
  bool is_zero() const { return lg_ == -std::numeric_limits<double>::infinity(); }

  // log-sum-exp; exact when one side is zero.
  friend LogValue operator+(LogValue a, LogValue b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double hi = a.lg_ > b.lg_ ? a.lg_ : b.lg_;
    const double lo = a.lg_ > b.lg_ ? b.lg_ : a.lg_;
    return from_log_unchecked(hi + std::log1p(std::exp(lo - hi)));
  }

  friend LogValue operator*(LogValue a, LogValue b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_log_unchecked(a.lg_ + b.lg_);
  }

  friend LogValue operator/(LogValue a, LogValue b) {
    if (b.is_zero()) throw BadParam("LogValue division by zero");
    if (a.is_zero()) return zero();
    return from_log_unchecked(a.lg_ - b.lg_);
  }

  LogValue pow(double e) const {
    if (is_zero()) {
      if (e <= 0.0) throw BadParam("LogValue: 0 raised to a nonpositive power");
      return zero();
    }
    return from_log_unchecked(lg_ * e);
  }

  friend bool operator<(LogValue a, LogValue b) { return a.lg_ < b.lg_; }
  friend bool operator>(LogValue a, LogValue b) { return a.lg_ > b.lg_; }
  friend bool operator<=(LogValue a, LogValue b) { return a.lg_ <= b.lg_; }
  friend bool operator>=(LogValue a, LogValue b) { return a.lg_ >= b.lg_; }
  friend bool operator==(LogValue a, LogValue b) { return a.lg_ == b.lg_; }

private:
  static constexpr LogValue from_log_unchecked(double lg) {
    LogValue v;
    v.lg_ = lg;
    return v;
  }
  double lg_;
};

}  // namespace ckstk
