#pragma once

#include <cmath>
#include <compare>
#include <limits>

#include "finexch/errors.hpp"

namespace finexch {

// A nonnegative real stored as its natural logarithm.  Addition is the
// numerically stable log-sum-exp; multiplication and division add and
// subtract logs.  Zero is represented by log = -infinity.  This is the
// floating-point counterpart of the exact-rational path: products of huge
// combinatorial terms never overflow, and mixture sums never underflow.
class LogReal {
 public:
  constexpr LogReal() : lg_(-std::numeric_limits<double>::infinity()) {}

  static LogReal from_log(double lg) {
    LogReal r;
    r.lg_ = lg;
    return r;
  }

  static LogReal from_double(double x) {
    if (std::isnan(x) || x < 0.0)
      throw ValidationError("LogReal requires a nonnegative value");
    return from_log(x == 0.0 ? -std::numeric_limits<double>::infinity()
                             : std::log(x));
  }

  double log_value() const { return lg_; }
  double to_double() const { return std::exp(lg_); }
  bool is_zero() const { return std::isinf(lg_) && lg_ < 0; }

  friend LogReal operator+(LogReal a, LogReal b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double hi = a.lg_ > b.lg_ ? a.lg_ : b.lg_;
    const double lo = a.lg_ > b.lg_ ? b.lg_ : a.lg_;
    return from_log(hi + std::log1p(std::exp(lo - hi)));
  }

  friend LogReal operator*(LogReal a, LogReal b) {
    if (a.is_zero() || b.is_zero()) return LogReal();
    return from_log(a.lg_ + b.lg_);
  }

  friend LogReal operator/(LogReal a, LogReal b) {
    if (b.is_zero()) throw ValidationError("LogReal division by zero");
    if (a.is_zero()) return LogReal();
    return from_log(a.lg_ - b.lg_);
  }

  LogReal& operator+=(LogReal o) { return *this = *this + o; }
  LogReal& operator*=(LogReal o) { return *this = *this * o; }
  LogReal& operator/=(LogReal o) { return *this = *this / o; }

  friend bool operator==(LogReal a, LogReal b) { return a.lg_ == b.lg_; }
  friend std::partial_ordering operator<=>(LogReal a, LogReal b) {
    return a.lg_ <=> b.lg_;
  }

 private:
  double lg_;
};

}  // namespace finexch
