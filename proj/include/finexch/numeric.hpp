#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "finexch/errors.hpp"
#include "finexch/logreal.hpp"
#include "finexch/rational.hpp"

namespace finexch {

// log n!, cached for small n, lgamma beyond the table.
inline double log_factorial(std::int64_t n) {
  if (n < 0) throw ValidationError("log_factorial of negative argument");
  static const std::vector<double> table = [] {
    std::vector<double> t(4096);
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = std::lgamma(static_cast<double>(i) + 1.0);
    return t;
  }();
  if (static_cast<std::size_t>(n) < table.size())
    return table[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

inline double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// Numeric kernel shared by the exact-rational and log-float paths.  Model
// and approximation code is written once against this interface; `Rational`
// instantiations are exact, `LogReal` instantiations run in log space.
template <class R>
struct num;

template <>
struct num<Rational> {
  using real_type = Rational;  // reporting domain (supports subtraction)
  static constexpr bool exact = true;

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(std::int64_t v) {
    return Rational(static_cast<long>(v));
  }
  static Rational from_ratio(std::int64_t a, std::int64_t b) {
    return make_rational(a, b);
  }
  static Rational binomial(std::int64_t n, std::int64_t k) {
    return Rational(binomial_integer(n, k));
  }
  static Rational multinomial(std::span<const std::int64_t> counts) {
    Integer result(1);
    std::int64_t partial = 0;
    for (std::int64_t c : counts) {
      partial += c;
      result *= binomial_integer(partial, c);
    }
    return Rational(result);
  }
  static Rational pow(const Rational& base, std::int64_t e) {
    if (e < 0) throw ValidationError("negative exponent");
    Rational r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()),
               static_cast<unsigned long>(e));
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()),
               static_cast<unsigned long>(e));
    return r;  // powers of a canonical rational stay canonical
  }
  static bool is_zero(const Rational& q) { return sgn(q) == 0; }
  static double to_double(const Rational& q) { return q.get_d(); }
  static const Rational& to_real(const Rational& q) { return q; }
};

template <>
struct num<LogReal> {
  using real_type = double;
  static constexpr bool exact = false;

  static LogReal zero() { return LogReal(); }
  static LogReal one() { return LogReal::from_log(0.0); }
  static LogReal from_int(std::int64_t v) {
    return LogReal::from_double(static_cast<double>(v));
  }
  static LogReal from_ratio(std::int64_t a, std::int64_t b) {
    if (a == 0) return LogReal();
    return LogReal::from_log(std::log(static_cast<double>(a)) -
                             std::log(static_cast<double>(b)));
  }
  static LogReal binomial(std::int64_t n, std::int64_t k) {
    return LogReal::from_log(log_binomial(n, k));
  }
  static LogReal multinomial(std::span<const std::int64_t> counts) {
    std::int64_t total = 0;
    double lg = 0.0;
    for (std::int64_t c : counts) {
      total += c;
      lg -= log_factorial(c);
    }
    return LogReal::from_log(lg + log_factorial(total));
  }
  static LogReal pow(LogReal base, std::int64_t e) {
    if (e < 0) throw ValidationError("negative exponent");
    if (e == 0) return one();
    if (base.is_zero()) return zero();
    return LogReal::from_log(base.log_value() * static_cast<double>(e));
  }
  static bool is_zero(LogReal v) { return v.is_zero(); }
  static double to_double(LogReal v) { return v.to_double(); }
  static double to_real(LogReal v) { return v.to_double(); }
};

// An element of [0, +inf]; beta and gamma live here.
template <class T>
struct Extended {
  static Extended infinity() { return Extended{}; }
  static Extended of(T v) {
    Extended e;
    e.finite_value = std::move(v);
    return e;
  }

  bool finite() const { return finite_value.has_value(); }
  const T& value() const { return *finite_value; }

  std::optional<T> finite_value;  // nullopt encodes +infinity
};

}  // namespace finexch
