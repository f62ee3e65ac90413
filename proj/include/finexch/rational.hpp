#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "finexch/errors.hpp"

namespace finexch {

using Integer = mpz_class;
using Rational = mpq_class;

// mpq_class does not canonicalize on construction; every rational that enters
// the library goes through here.
inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  return make_rational(Integer(static_cast<long>(num)),
                       Integer(static_cast<long>(den)));
}

inline Integer binomial_integer(std::int64_t n, std::int64_t k) {
  if (n < 0) throw ValidationError("binomial with negative n");
  if (k < 0 || k > n) return Integer(0);
  Integer result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return result;
}

// Canonical "p/q" form; plain "p" when the denominator is 1.
inline std::string to_fraction_string(const Rational& q) {
  return q.get_str();
}

// Accepts "p/q", a plain integer, or a plain decimal such as "0.25".
// Decimals parse exactly (base-10 digits over a power of ten).
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  // trim
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.pop_back();
  if (s.empty()) throw ValidationError("empty number");

  const auto bad = [&] {
    return ValidationError("cannot parse number '" + std::string(text) + "'");
  };

  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw bad();
    if (q.get_den() == 0) throw bad();
    q.canonicalize();
    return q;
  }

  const auto dot = s.find('.');
  if (dot == std::string::npos) {
    Integer n;
    if (n.set_str(s, 10) != 0) throw bad();
    return Rational(n);
  }

  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  const std::size_t frac_len = s.size() - dot - 1;
  if (frac_len == 0 || dot == 0) throw bad();
  bool negative = false;
  if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
    negative = digits[0] == '-';
    digits.erase(digits.begin());
  }
  if (digits.empty()) throw bad();
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();

  Integer num;
  if (num.set_str(digits, 10) != 0) throw bad();
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rational q = make_rational(num, den);
  if (negative) q = -q;
  return q;
}

}  // namespace finexch
