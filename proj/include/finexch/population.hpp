#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finexch/approx.hpp"
#include "finexch/distribution.hpp"
#include "finexch/errors.hpp"
#include "finexch/model.hpp"

namespace finexch {

enum class PredictionMethod { exact, ht_approx };

inline std::string to_string(PredictionMethod method) {
  return method == PredictionMethod::exact ? "exact" : "HT-approx";
}

template <class R>
struct GroupPrediction {
  std::string id;
  std::int64_t size = 0;    // m_g
  std::int64_t sampled = 0; // n_g
  LabelDistribution<R> values;
};

// Expected population proportions per label: the sample-fraction-weighted
// average of the empirical frequencies and the (exact or add-one) prediction
// for the unobserved remainder.
template <class R>
struct PopulationPrediction {
  PredictionMethod method = PredictionMethod::ht_approx;
  std::int64_t m = 0;
  std::int64_t n = 0;
  LabelDistribution<R> values;
  std::vector<GroupPrediction<R>> groups;  // empty unless stratified
};

// p_j = (n/m) f^_j + (1 - n/m) q_j, with q the exact predictive (exact
// method, model required) or add-one smoothing (HT method).  A census
// (n = m) returns the empirical frequencies in either method; an empty
// sample returns q alone.
template <class R>
PopulationPrediction<R> population_prediction(
    const Histogram& h, std::int64_t m, PredictionMethod method,
    const ExchangeableModel<R>* model = nullptr) {
  const std::int64_t n = h.total();
  if (n > m)
    throw ValidationError("sample size exceeds population size");
  if (method == PredictionMethod::exact && n < m) {
    if (model == nullptr)
      throw ValidationError("exact population prediction requires a model");
    if (model->m() != m)
      throw ValidationError("model population size does not match m");
  }

  auto make = [&](LabelDistribution<R> values) {
    return PopulationPrediction<R>{method, m, n, std::move(values), {}};
  };

  if (n == m) return make(ml_approx<R>(h));

  LabelDistribution<R> remainder = method == PredictionMethod::exact
                                       ? predictive_exact(*model, h)
                                       : ht_approx<R>(h);
  if (n == 0) return make(std::move(remainder));

  const LabelDistribution<R> empirical = ml_approx<R>(h);
  const R sampled_weight = num<R>::from_ratio(n, m);
  const R rest_weight = num<R>::from_ratio(m - n, m);
  std::vector<R> values;
  values.reserve(static_cast<std::size_t>(h.k()));
  for (int j = 0; j < h.k(); ++j)
    values.push_back(sampled_weight * empirical[j] +
                     rest_weight * remainder[j]);
  return make(LabelDistribution<R>(std::move(values)));
}

template <class R>
struct GroupSample {
  std::string id;
  std::int64_t size = 0;  // m_g, taken as known
  Histogram histogram;
  const ExchangeableModel<R>* model = nullptr;  // needed for the exact method
};

// Stratified prediction: groups are treated independently, each through
// population_prediction, and combined with weights m_g / m.
template <class R>
PopulationPrediction<R> grouped_prediction(
    const std::vector<GroupSample<R>>& groups, PredictionMethod method,
    std::optional<std::int64_t> expected_m = std::nullopt) {
  if (groups.empty()) throw ValidationError("need at least one group");
  const int k = groups.front().histogram.k();
  std::int64_t m = 0;
  std::int64_t n = 0;
  for (const auto& g : groups) {
    if (g.histogram.k() != k)
      throw ValidationError("groups must share the same label set");
    if (g.size <= 0) throw ValidationError("group sizes must be positive");
    m += g.size;
    n += g.histogram.total();
  }
  if (expected_m && *expected_m != m)
    throw ValidationError("group sizes sum to " + std::to_string(m) +
                          ", not the stated population size " +
                          std::to_string(*expected_m));

  PopulationPrediction<R> result{
      method, m, n,
      LabelDistribution<R>::uniform(k),  // replaced below
      {}};
  std::vector<R> overall(static_cast<std::size_t>(k), num<R>::zero());
  for (const auto& g : groups) {
    PopulationPrediction<R> per =
        population_prediction(g.histogram, g.size, method, g.model);
    const R share = num<R>::from_ratio(g.size, m);
    for (int j = 0; j < k; ++j)
      overall[static_cast<std::size_t>(j)] =
          overall[static_cast<std::size_t>(j)] + share * per.values[j];
    result.groups.push_back(
        {g.id, g.size, g.histogram.total(), std::move(per.values)});
  }
  result.values = LabelDistribution<R>(std::move(overall));
  return result;
}

// Sum a k-label distribution down to merged labels.
template <class R>
LabelDistribution<R> sum_by_merge(const LabelDistribution<R>& f,
                                  const LabelMerge& merge) {
  if (merge.source_k() != f.k())
    throw ValidationError("merge map length must equal label count");
  std::vector<R> sums(static_cast<std::size_t>(merge.target_k()),
                      num<R>::zero());
  for (int j = 0; j < f.k(); ++j)
    sums[static_cast<std::size_t>(merge.target(j))] =
        sums[static_cast<std::size_t>(merge.target(j))] + f[j];
  return LabelDistribution<R>(std::move(sums));
}

// The two routes to a merged-label prediction.  The exact routes always
// coincide; the add-one routes differ because predict-then-sum smooths with
// k pseudo-counts while merge-then-predict smooths with only k'.
template <class R>
struct RouteComparison {
  LabelDistribution<R> ht_predict_then_sum;
  LabelDistribution<R> ht_merge_then_predict;
  typename num<R>::real_type tv;

  struct ExactRoutes {
    LabelDistribution<R> predict_then_sum;
    LabelDistribution<R> merge_then_predict;
    bool equal = false;
  };
  std::optional<ExactRoutes> exact;
};

template <class R>
RouteComparison<R> route_comparison(const Histogram& h, const LabelMerge& merge,
                                    const ExchangeableModel<R>* model = nullptr) {
  LabelDistribution<R> summed = sum_by_merge(ht_approx<R>(h), merge);
  LabelDistribution<R> merged = ht_approx<R>(merge_histogram(h, merge));
  RouteComparison<R> result{summed, merged, tv_distance(summed, merged),
                            std::nullopt};
  if (model != nullptr) {
    LabelDistribution<R> exact_sum =
        sum_by_merge(predictive_exact(*model, h), merge);
    LabelDistribution<R> exact_merged = predictive_exact(
        merge_model(*model, merge), merge_histogram(h, merge));
    bool equal;
    if constexpr (num<R>::exact) {
      equal = exact_sum == exact_merged;
    } else {
      equal = true;
      for (int j = 0; j < exact_sum.k() && equal; ++j)
        equal = detail::real_eq(num<R>::to_double(exact_sum[j]),
                                num<R>::to_double(exact_merged[j]));
    }
    result.exact = typename RouteComparison<R>::ExactRoutes{
        std::move(exact_sum), std::move(exact_merged), equal};
  }
  return result;
}

struct ResolutionAdvice {
  bool under_powered = false;   // n < 9k
  std::int64_t recommended_k = 1;  // floor(n / 9), at least 1
};

inline ResolutionAdvice resolution_advice(std::int64_t n, std::int64_t k) {
  if (n < 0) throw ValidationError("sample size must be nonnegative");
  if (k < 1) throw ValidationError("label count must be positive");
  return ResolutionAdvice{n < 9 * k, std::max<std::int64_t>(n / 9, 1)};
}

}  // namespace finexch
