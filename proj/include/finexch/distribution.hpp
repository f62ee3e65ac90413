#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "finexch/errors.hpp"
#include "finexch/numeric.hpp"

namespace finexch {

// A probability vector over the k labels.  Holds exact rationals or
// log-domain floats depending on the numeric mode.
template <class R>
class LabelDistribution {
 public:
  explicit LabelDistribution(std::vector<R> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw ValidationError("distribution must have k >= 1");
    R sum = num<R>::zero();
    for (const R& p : probs_) sum = sum + p;
    if constexpr (num<R>::exact) {
      if (sum != num<R>::one())
        throw ValidationError("probabilities must sum to 1 exactly");
    } else {
      if (std::abs(num<R>::to_double(sum) - 1.0) > 1e-12)
        throw ValidationError("probabilities must sum to 1 within 1e-12");
    }
  }

  static LabelDistribution uniform(int k) {
    if (k < 1) throw ValidationError("label count must be positive");
    return LabelDistribution(
        std::vector<R>(static_cast<std::size_t>(k), num<R>::from_ratio(1, k)));
  }

  // Normalizes nonnegative mass; throws ZeroProbabilityError if all zero.
  static LabelDistribution normalized(std::vector<R> mass);

  int k() const { return static_cast<int>(probs_.size()); }
  const R& operator[](int j) const {
    return probs_.at(static_cast<std::size_t>(j));
  }
  const std::vector<R>& probs() const { return probs_; }

  std::vector<double> to_doubles() const {
    std::vector<double> out;
    out.reserve(probs_.size());
    for (const R& p : probs_) out.push_back(num<R>::to_double(p));
    return out;
  }

  friend bool operator==(const LabelDistribution& a,
                         const LabelDistribution& b) {
    return a.probs_ == b.probs_;
  }

 private:
  std::vector<R> probs_;
};

template <class R>
LabelDistribution<R> LabelDistribution<R>::normalized(std::vector<R> mass) {
  R sum = num<R>::zero();
  for (const R& v : mass) sum = sum + v;
  if (num<R>::is_zero(sum)) throw ZeroProbabilityError();
  for (R& v : mass) v = v / sum;
  return LabelDistribution(std::move(mass));
}

// Half the l1 distance; the maximal difference in event probabilities.
// Exact in rational mode, evaluated on doubles in float mode.
template <class R>
typename num<R>::real_type tv_distance(const LabelDistribution<R>& f,
                                       const LabelDistribution<R>& g) {
  if (f.k() != g.k()) throw ValidationError("distribution dimension mismatch");
  if constexpr (num<R>::exact) {
    Rational sum(0);
    for (int j = 0; j < f.k(); ++j) sum += abs(f[j] - g[j]);
    return Rational(sum / 2);
  } else {
    double sum = 0.0;
    for (int j = 0; j < f.k(); ++j)
      sum += std::abs(num<R>::to_double(f[j]) - num<R>::to_double(g[j]));
    return sum / 2.0;
  }
}

}  // namespace finexch
