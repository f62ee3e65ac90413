#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finexch/distribution.hpp"
#include "finexch/errors.hpp"
#include "finexch/model.hpp"
#include "finexch/numeric.hpp"

namespace finexch {

// Add-one smoothing: f~_j = (h_j + 1) / (n + k).  Defined for every
// histogram, including the empty one, and strictly positive.
template <class R>
LabelDistribution<R> ht_approx(const Histogram& h) {
  const std::int64_t n = h.total();
  const int k = h.k();
  std::vector<R> probs;
  probs.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j)
    probs.push_back(num<R>::from_ratio(h.count(j) + 1, n + k));
  return LabelDistribution<R>(std::move(probs));
}

// Empirical frequencies f^_j = h_j / n; undefined on an empty sample.
template <class R>
LabelDistribution<R> ml_approx(const Histogram& h) {
  const std::int64_t n = h.total();
  if (n == 0)
    throw ValidationError("ml approximation requires a nonempty sample");
  std::vector<R> probs;
  probs.reserve(static_cast<std::size_t>(h.k()));
  for (int j = 0; j < h.k(); ++j)
    probs.push_back(num<R>::from_ratio(h.count(j), n));
  return LabelDistribution<R>(std::move(probs));
}

// Modified ML: zero counts replaced by one, renormalized by n + v where v is
// the number of zero counts.  f^'_j = max(h_j, 1) / (n + v).
template <class R>
LabelDistribution<R> ml_modified(const Histogram& h) {
  const std::int64_t n = h.total();
  std::int64_t v = 0;
  for (int j = 0; j < h.k(); ++j)
    if (h.count(j) == 0) ++v;
  std::vector<R> probs;
  probs.reserve(static_cast<std::size_t>(h.k()));
  for (int j = 0; j < h.k(); ++j)
    probs.push_back(num<R>::from_ratio(std::max<std::int64_t>(h.count(j), 1),
                                       n + v));
  return LabelDistribution<R>(std::move(probs));
}

namespace detail {

// max/min - 1 over positive values; +infinity when the minimum is zero.
// Throws ZeroProbabilityError when every value is zero.
template <class R>
Extended<typename num<R>::real_type> ratio_spread(const std::vector<R>& values) {
  using real_t = typename num<R>::real_type;
  const R* lo = nullptr;
  const R* hi = nullptr;
  for (const R& v : values) {
    if (!lo || v < *lo) lo = &v;
    if (!hi || v > *hi) hi = &v;
  }
  if (num<R>::is_zero(*hi)) throw ZeroProbabilityError();
  if (num<R>::is_zero(*lo)) return Extended<real_t>::infinity();
  if constexpr (num<R>::exact) {
    return Extended<real_t>::of(Rational(*hi / *lo - 1));
  } else {
    const double ratio = num<R>::to_double(*hi / *lo);
    if (!std::isfinite(ratio)) return Extended<real_t>::infinity();
    return Extended<real_t>::of(ratio - 1.0);
  }
}

}  // namespace detail

// The spread of the add-one histogram probabilities adjacent to h:
//   beta = max_j f_H^{n+1}(h+e_j) / min_j f_H^{n+1}(h+e_j) - 1.
// TV(f*, f~) <= beta / 2.  Uses the excess (ratio minus one) convention.
template <class R>
Extended<typename num<R>::real_type> beta_excess_from_marginals(
    const std::vector<R>& add_one) {
  return detail::ratio_spread(add_one);
}

template <class R>
Extended<typename num<R>::real_type> beta_excess(
    const ExchangeableModel<R>& model, const Histogram& h) {
  return beta_excess_from_marginals(add_one_marginals(model, h));
}

// Same spread after the modified-ML adjustment
//   a_j = f_H^{n+1}(h+e_j) * (h_j+1) / max(h_j, 1);
// TV(f*, f^') <= gamma / 2 under the same excess convention.
template <class R>
Extended<typename num<R>::real_type> gamma_excess_from_marginals(
    const std::vector<R>& add_one, const Histogram& h) {
  std::vector<R> adjusted;
  adjusted.reserve(add_one.size());
  for (int j = 0; j < h.k(); ++j)
    adjusted.push_back(add_one[static_cast<std::size_t>(j)] *
                       num<R>::from_ratio(h.count(j) + 1,
                                          std::max<std::int64_t>(h.count(j), 1)));
  return detail::ratio_spread(adjusted);
}

template <class R>
Extended<typename num<R>::real_type> gamma_excess(
    const ExchangeableModel<R>& model, const Histogram& h) {
  return gamma_excess_from_marginals(add_one_marginals(model, h), h);
}

// The quick bound on gamma from the smallest and largest histogram counts:
//   beta * [(h_min+1)/max(h_min,1)] / [(h_max+1)/h_max].
// Informational only: with the excess convention it can undershoot gamma
// (uniform weights give bound 0 while gamma > 0), so it is reported, never
// asserted.
template <class T>
Extended<T> gamma_crude_bound(const Extended<T>& beta, const Histogram& h) {
  if (h.total() == 0)
    throw ValidationError("crude gamma bound needs a nonempty sample");
  if (!beta.finite()) return Extended<T>::infinity();
  const std::int64_t lo = *std::min_element(h.counts().begin(),
                                            h.counts().end());
  const std::int64_t hi = *std::max_element(h.counts().begin(),
                                            h.counts().end());
  if constexpr (std::is_same_v<T, Rational>) {
    const Rational lo_factor =
        make_rational(lo + 1, std::max<std::int64_t>(lo, 1));
    const Rational hi_factor = make_rational(hi + 1, hi);
    return Extended<T>::of(Rational(beta.value() * lo_factor / hi_factor));
  } else {
    const double lo_factor = static_cast<double>(lo + 1) /
                             static_cast<double>(std::max<std::int64_t>(lo, 1));
    const double hi_factor =
        static_cast<double>(hi + 1) / static_cast<double>(hi);
    return Extended<T>::of(beta.value() * lo_factor / hi_factor);
  }
}

struct BoundCheck {
  std::string name;
  bool holds = false;
  bool trivial = false;  // true when the bound is infinite and TV <= 1 closes it
};

// Everything the bound machinery produces for one model/sample pair.
template <class R>
struct ApproxReport {
  using real_t = typename num<R>::real_type;

  Histogram h;
  LabelDistribution<R> fstar, ftilde, fhat, fhatprime;
  Extended<real_t> beta, gamma;
  real_t tv_star_tilde, tv_star_hatprime, tv_tilde_hat;

  std::vector<R> add_one;                 // f_H^{n+1}(h + e_j)
  std::vector<std::optional<real_t>> u;   // add_one[j] / add_one[0]; empty when anchor is 0
  std::vector<real_t> v;                  // (h_j + 1) / (h_1 + 1)

  Extended<real_t> crude_gamma_bound;  // informational
  bool crude_bound_held = false;       // informational

  std::vector<BoundCheck> certificates;

  bool all_hold() const {
    return std::all_of(certificates.begin(), certificates.end(),
                       [](const BoundCheck& c) { return c.holds; });
  }
};

namespace detail {

template <class T>
bool real_leq(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, Rational>) {
    return a <= b;
  } else {
    return a <= b + 1e-12;  // float mode tolerates rounding at the boundary
  }
}

template <class T>
bool real_eq(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, Rational>) {
    return a == b;
  } else {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  }
}

}  // namespace detail

// Computes the exact predictive and all three approximations, the beta and
// gamma spreads, the per-label ratio bounds, and verifies every certified
// inequality.  Requires 1 <= n < m (the ML approximation needs a nonempty
// sample) and a sample with positive probability.
template <class R>
ApproxReport<R> ht_report(const ExchangeableModel<R>& model,
                          const Histogram& h) {
  using real_t = typename num<R>::real_type;
  const std::int64_t n = h.total();
  const int k = h.k();
  if (n < 1)
    throw ValidationError("report requires a nonempty sample histogram");
  if (n >= model.m())
    throw ValidationError(
        "sample size must be smaller than the population size");

  std::vector<R> add_one = add_one_marginals(model, h);

  std::vector<R> star_mass = add_one;
  for (int j = 0; j < k; ++j)
    star_mass[static_cast<std::size_t>(j)] =
        star_mass[static_cast<std::size_t>(j)] *
        num<R>::from_int(h.count(j) + 1);
  LabelDistribution<R> fstar =
      LabelDistribution<R>::normalized(std::move(star_mass));
  LabelDistribution<R> ftilde = ht_approx<R>(h);
  LabelDistribution<R> fhat = ml_approx<R>(h);
  LabelDistribution<R> fhatprime = ml_modified<R>(h);

  ApproxReport<R> report{h,
                         fstar,
                         ftilde,
                         fhat,
                         fhatprime,
                         beta_excess_from_marginals(add_one),
                         gamma_excess_from_marginals(add_one, h),
                         tv_distance(fstar, ftilde),
                         tv_distance(fstar, fhatprime),
                         tv_distance(ftilde, fhat),
                         add_one,
                         {},
                         {},
                         {},
                         false,
                         {}};

  // per-label diagnostics relative to the first label
  const bool anchor_positive = !num<R>::is_zero(add_one[0]);
  for (int j = 0; j < k; ++j) {
    if (anchor_positive)
      report.u.push_back(num<R>::to_real(add_one[static_cast<std::size_t>(j)] /
                                         add_one[0]));
    else
      report.u.push_back(std::nullopt);
    if constexpr (num<R>::exact)
      report.v.push_back(make_rational(h.count(j) + 1, h.count(0) + 1));
    else
      report.v.push_back(static_cast<double>(h.count(j) + 1) /
                         static_cast<double>(h.count(0) + 1));
  }

  const auto tv_bound_check = [&](const std::string& name, const real_t& tv,
                                  const Extended<real_t>& bound) {
    BoundCheck check{name, true, false};
    if (!bound.finite()) {
      check.trivial = true;  // TV <= 1 always
    } else if constexpr (num<R>::exact) {
      check.holds = detail::real_leq(tv, Rational(bound.value() / 2));
    } else {
      check.holds = detail::real_leq(tv, bound.value() / 2.0);
    }
    return check;
  };
  report.certificates.push_back(
      tv_bound_check("tv_star_tilde<=beta/2", report.tv_star_tilde,
                     report.beta));
  report.certificates.push_back(
      tv_bound_check("tv_star_hatprime<=gamma/2", report.tv_star_hatprime,
                     report.gamma));

  // per-label ratio bounds: 1/(1+beta) <= f*_j / f~_j <= 1+beta
  {
    BoundCheck check{"blim_ratio", true, false};
    if (!report.beta.finite()) {
      check.trivial = true;
    } else {
      const real_t one_plus = [&] {
        if constexpr (num<R>::exact)
          return Rational(report.beta.value() + 1);
        else
          return report.beta.value() + 1.0;
      }();
      for (int j = 0; j < k && check.holds; ++j) {
        const real_t ratio = num<R>::to_real(report.fstar[j] / report.ftilde[j]);
        if constexpr (num<R>::exact) {
          check.holds = detail::real_leq(ratio, one_plus) &&
                        detail::real_leq(Rational(1), Rational(ratio * one_plus));
        } else {
          check.holds = detail::real_leq(ratio, one_plus) &&
                        detail::real_leq(1.0, ratio * one_plus);
        }
      }
    }
    report.certificates.push_back(check);
  }

  // shrinkage identity: TV(f~, f^) = [k/(n+k)] * TV(f^, uniform)
  {
    BoundCheck check{"shrinkage_identity", false, false};
    const real_t rhs_tv =
        tv_distance(report.fhat, LabelDistribution<R>::uniform(k));
    if constexpr (num<R>::exact) {
      check.holds = detail::real_eq(
          report.tv_tilde_hat, Rational(make_rational(k, n + k) * rhs_tv));
    } else {
      check.holds = detail::real_eq(
          report.tv_tilde_hat,
          static_cast<double>(k) / static_cast<double>(n + k) * rhs_tv);
    }
    report.certificates.push_back(check);
  }

  report.crude_gamma_bound = gamma_crude_bound(report.beta, h);
  if (!report.crude_gamma_bound.finite()) {
    report.crude_bound_held = true;
  } else if (report.gamma.finite()) {
    report.crude_bound_held =
        detail::real_leq(report.gamma.value(), report.crude_gamma_bound.value());
  } else {
    report.crude_bound_held = false;  // finite bound cannot dominate infinity
  }

  return report;
}

}  // namespace finexch
