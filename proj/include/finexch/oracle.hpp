#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "finexch/approx.hpp"
#include "finexch/combinat.hpp"
#include "finexch/distribution.hpp"
#include "finexch/errors.hpp"
#include "finexch/linear_feasibility.hpp"
#include "finexch/model.hpp"
#include "finexch/population.hpp"

// Brute-force exact-rational reference implementations.  Everything here
// works extensionally on the full table of k^m sequence probabilities, so it
// shares no code path with the mixture formulas it certifies.

namespace finexch {

// Dense map from every length-m sequence over k labels to an exact rational
// probability.  Sequences are indexed base-k, first element most significant.
class SequenceTable {
 public:
  static SequenceTable from_probabilities(std::int64_t m, int k,
                                          std::vector<Rational> probs) {
    SequenceTable t;
    t.m_ = m;
    t.k_ = k;
    if (probs.size() != table_size(m, k))
      throw ValidationError("sequence table has wrong size");
    Rational sum(0);
    for (const Rational& p : probs) {
      if (sgn(p) < 0)
        throw ValidationError("sequence probabilities must be nonnegative");
      sum += p;
    }
    if (sum != 1)
      throw ValidationError("sequence probabilities must sum to 1 exactly");
    t.probs_ = std::move(probs);
    return t;
  }

  static SequenceTable from_model(const ExchangeableModel<Rational>& model,
                                  std::size_t cap = kDefaultEnumerationCap) {
    const std::size_t size = table_size(model.m(), model.k(), cap);
    std::vector<Rational> probs;
    probs.reserve(size);
    std::vector<int> sequence(static_cast<std::size_t>(model.m()), 0);
    for (std::size_t index = 0; index < size; ++index) {
      decode(index, model.m(), model.k(), sequence);
      const Histogram h = histogram_of(sequence, model.k());
      probs.push_back(model.weights.weight_at(h) /
                      Rational(multinomial_coeff(h)));
    }
    return from_probabilities(model.m(), model.k(), std::move(probs));
  }

  std::int64_t m() const { return m_; }
  int k() const { return k_; }
  const std::vector<Rational>& probabilities() const { return probs_; }

  // Marginal probability of a prefix: the sum over all suffix completions.
  Rational prefix_marginal(std::span<const int> prefix) const {
    if (static_cast<std::int64_t>(prefix.size()) > m_)
      throw ValidationError("prefix longer than the sequences in the table");
    std::size_t base = 0;
    for (int x : prefix) {
      if (x < 0 || x >= k_) throw ValidationError("label index out of range");
      base = base * static_cast<std::size_t>(k_) + static_cast<std::size_t>(x);
    }
    const std::int64_t free = m_ - static_cast<std::int64_t>(prefix.size());
    std::size_t block = 1;
    for (std::int64_t i = 0; i < free; ++i)
      block *= static_cast<std::size_t>(k_);
    Rational sum(0);
    for (std::size_t offset = 0; offset < block; ++offset)
      sum += probs_[base * block + offset];
    return sum;
  }

  // Exact n-histogram marginal computed from the table alone.
  Rational histogram_marginal(const Histogram& h) const {
    const std::int64_t n = h.total();
    if (n > m_) throw ValidationError("histogram total exceeds m");
    std::vector<int> prefix(static_cast<std::size_t>(n), 0);
    std::size_t prefixes = 1;
    for (std::int64_t i = 0; i < n; ++i)
      prefixes *= static_cast<std::size_t>(k_);
    Rational sum(0);
    for (std::size_t index = 0; index < prefixes; ++index) {
      decode(index, n, k_, prefix);
      if (histogram_of(prefix, k_) == h) sum += prefix_marginal(prefix);
    }
    return sum;
  }

  static void decode(std::size_t index, std::int64_t length, int k,
                     std::vector<int>& out) {
    out.resize(static_cast<std::size_t>(length));
    for (std::int64_t pos = length - 1; pos >= 0; --pos) {
      out[static_cast<std::size_t>(pos)] =
          static_cast<int>(index % static_cast<std::size_t>(k));
      index /= static_cast<std::size_t>(k);
    }
  }

 private:
  SequenceTable() = default;

  static std::size_t table_size(std::int64_t m, int k,
                                std::size_t cap = kDefaultEnumerationCap) {
    if (m < 0 || k < 1) throw ValidationError("invalid table dimensions");
    Integer size;
    mpz_ui_pow_ui(size.get_mpz_t(), static_cast<unsigned long>(k),
                  static_cast<unsigned long>(m));
    if (cmp(size, static_cast<unsigned long>(cap)) > 0)
      throw CapExceededError(
          "sequence table size " + size.get_str() + " exceeds cap " +
              std::to_string(cap),
          size.get_str());
    return static_cast<std::size_t>(size.get_ui());
  }

  std::int64_t m_ = 0;
  int k_ = 1;
  std::vector<Rational> probs_;
};

// Predictive distribution computed extensionally: build the full sequence
// table and take the quotient of prefix marginals.
inline LabelDistribution<Rational> brute_force_predictive(
    const ExchangeableModel<Rational>& model, std::span<const int> sample,
    std::size_t cap = kDefaultEnumerationCap) {
  if (static_cast<std::int64_t>(sample.size()) >= model.m())
    throw ValidationError(
        "sample size must be smaller than the population size");
  const SequenceTable table = SequenceTable::from_model(model, cap);
  const Rational denominator = table.prefix_marginal(sample);
  if (sgn(denominator) == 0) throw ZeroProbabilityError();
  std::vector<Rational> probs;
  probs.reserve(static_cast<std::size_t>(model.k()));
  std::vector<int> extended(sample.begin(), sample.end());
  extended.push_back(0);
  for (int j = 0; j < model.k(); ++j) {
    extended.back() = j;
    probs.push_back(table.prefix_marginal(extended) / denominator);
  }
  return LabelDistribution<Rational>(std::move(probs));
}

struct Verdict {
  bool pass = true;
  std::string detail;  // first counterexample when failing
};

// Pass iff every pair of sequences sharing a histogram has equal probability.
inline Verdict verify_exchangeable(const SequenceTable& table) {
  std::vector<std::optional<std::pair<std::size_t, Rational>>> seen(
      enumerate_histograms(table.m(), table.k()).size());
  std::vector<int> sequence;
  for (std::size_t index = 0; index < table.probabilities().size(); ++index) {
    SequenceTable::decode(index, table.m(), table.k(), sequence);
    const std::size_t rank =
        histogram_rank(histogram_of(sequence, table.k()));
    const Rational& p = table.probabilities()[index];
    if (!seen[rank]) {
      seen[rank] = {index, p};
    } else if (seen[rank]->second != p) {
      std::ostringstream msg;
      msg << "sequences " << seen[rank]->first << " and " << index
          << " share a histogram but have probabilities "
          << to_fraction_string(seen[rank]->second) << " vs "
          << to_fraction_string(p);
      return {false, msg.str()};
    }
  }
  return {};
}

// Pass iff the brute-force n-marginal of the table equals the urn-mixture
// form at every n-sequence, using the histogram weights induced by the
// table itself.
inline Verdict verify_frt(const SequenceTable& table, std::int64_t n) {
  if (n < 0 || n > table.m())
    throw ValidationError("marginal size must satisfy 0 <= n <= m");

  // induced weights: the table's own m-histogram marginal
  const std::vector<Histogram> urns =
      enumerate_histograms(table.m(), table.k());
  std::vector<Rational> weights(urns.size(), Rational(0));
  std::vector<int> sequence;
  for (std::size_t index = 0; index < table.probabilities().size(); ++index) {
    SequenceTable::decode(index, table.m(), table.k(), sequence);
    weights[histogram_rank(histogram_of(sequence, table.k()))] +=
        table.probabilities()[index];
  }

  std::size_t prefixes = 1;
  for (std::int64_t i = 0; i < n; ++i)
    prefixes *= static_cast<std::size_t>(table.k());
  std::vector<int> prefix;
  for (std::size_t index = 0; index < prefixes; ++index) {
    SequenceTable::decode(index, n, table.k(), prefix);
    const Histogram h = histogram_of(prefix, table.k());
    Rational mixture(0);
    for (std::size_t r = 0; r < urns.size(); ++r)
      mixture += hypergeometric_pmf<Rational>(h, urns[r]) * weights[r];
    mixture /= Rational(multinomial_coeff(h));
    const Rational direct = table.prefix_marginal(prefix);
    if (direct != mixture) {
      std::ostringstream msg;
      msg << "n-sequence #" << index << ": brute-force marginal "
          << to_fraction_string(direct) << " != mixture "
          << to_fraction_string(mixture);
      return {false, msg.str()};
    }
  }
  return {};
}

inline Verdict verify_frt(const ExchangeableModel<Rational>& model,
                          std::int64_t n,
                          std::size_t cap = kDefaultEnumerationCap) {
  return verify_frt(SequenceTable::from_model(model, cap), n);
}

// Bundle of exact re-derivations and bound checks for one model/sample pair;
// all probability inputs are recomputed from the sequence table.
struct HtBoundsVerdict {
  bool pass = true;               // the certified bounds all hold
  bool beta_finite = false;
  bool gamma_finite = false;
  Rational beta{0};               // meaningful when finite
  Rational gamma{0};
  Rational tv_star_tilde{0};
  Rational tv_star_hatprime{0};
  bool blim_ok = true;
  bool crude_bound_held = false;  // recorded, not asserted
  std::string detail;
};

inline HtBoundsVerdict verify_ht_bounds(
    const ExchangeableModel<Rational>& model, const Histogram& h,
    std::size_t cap = kDefaultEnumerationCap) {
  const std::int64_t n = h.total();
  if (n >= model.m())
    throw ValidationError(
        "sample size must be smaller than the population size");
  const SequenceTable table = SequenceTable::from_model(model, cap);

  // canonical sample sequence with histogram h
  std::vector<int> sample;
  for (int j = 0; j < h.k(); ++j)
    sample.insert(sample.end(), static_cast<std::size_t>(h.count(j)), j);
  const Rational sample_prob = table.prefix_marginal(sample);
  if (sgn(sample_prob) == 0) throw ZeroProbabilityError();

  // f* from the table
  std::vector<Rational> star;
  std::vector<int> extended = sample;
  extended.push_back(0);
  for (int j = 0; j < h.k(); ++j) {
    extended.back() = j;
    star.push_back(table.prefix_marginal(extended) / sample_prob);
  }
  const LabelDistribution<Rational> fstar(std::move(star));
  const LabelDistribution<Rational> ftilde = ht_approx<Rational>(h);
  const LabelDistribution<Rational> fhatprime = ml_modified<Rational>(h);

  // add-one histogram probabilities from the table
  std::vector<Rational> add_one;
  for (int j = 0; j < h.k(); ++j)
    add_one.push_back(table.histogram_marginal(h.add_one(j)));

  HtBoundsVerdict verdict;
  verdict.tv_star_tilde = tv_distance(fstar, ftilde);
  verdict.tv_star_hatprime = tv_distance(fstar, fhatprime);

  const auto beta = beta_excess_from_marginals(add_one);
  const auto gamma = gamma_excess_from_marginals(add_one, h);
  verdict.beta_finite = beta.finite();
  verdict.gamma_finite = gamma.finite();

  if (beta.finite()) {
    verdict.beta = beta.value();
    if (verdict.tv_star_tilde > verdict.beta / 2) {
      verdict.pass = false;
      verdict.detail = "TV(f*, f~) exceeds beta/2";
    }
    const Rational one_plus = verdict.beta + 1;
    for (int j = 0; j < h.k(); ++j) {
      const Rational ratio = fstar[j] / ftilde[j];
      if (ratio > one_plus || ratio * one_plus < 1) {
        verdict.blim_ok = false;
        verdict.pass = false;
        verdict.detail = "per-label ratio bound violated at label " +
                         std::to_string(j + 1);
      }
    }
  }
  if (gamma.finite()) {
    verdict.gamma = gamma.value();
    if (verdict.tv_star_hatprime > verdict.gamma / 2) {
      verdict.pass = false;
      verdict.detail = "TV(f*, f^') exceeds gamma/2";
    }
  }

  if (n > 0) {
    const auto crude = gamma_crude_bound(beta, h);
    if (!crude.finite())
      verdict.crude_bound_held = true;
    else if (gamma.finite())
      verdict.crude_bound_held = gamma.value() <= crude.value();
    else
      verdict.crude_bound_held = false;
  }
  return verdict;
}

// Pass iff summing the exact prediction over merge groups equals the exact
// prediction of the merged model on the merged histogram, exactly.
inline Verdict verify_merge_commutes(const ExchangeableModel<Rational>& model,
                                     const LabelMerge& merge,
                                     const Histogram& h) {
  const LabelDistribution<Rational> summed =
      sum_by_merge(predictive_exact(model, h), merge);
  const LabelDistribution<Rational> merged = predictive_exact(
      merge_model(model, merge), merge_histogram(h, merge));
  for (int j = 0; j < summed.k(); ++j) {
    if (summed[j] != merged[j]) {
      std::ostringstream msg;
      msg << "merged label " << j + 1 << ": predict-then-sum "
          << to_fraction_string(summed[j]) << " != merge-then-predict "
          << to_fraction_string(merged[j]);
      return {false, msg.str()};
    }
  }
  return {};
}

// Decides whether a PMF over n-histograms extends to an exchangeable
// population of size m: feasibility of  sum_r H^n(.; u_r) w_r = target,
// w >= 0 (the unit-sum constraint is implied).  Exact rational solve,
// deliberately capped to tiny scale.
struct ExtendabilityResult {
  bool feasible = false;
  std::optional<SimplexWeights<Rational>> witness;
};

inline ExtendabilityResult is_extendable(const std::vector<Rational>& target,
                                         std::int64_t n, int k, std::int64_t m,
                                         std::size_t scale_cap = 200) {
  if (n > m) throw ValidationError("target sample size exceeds m");
  const Integer c = histogram_space_size(m, k);
  if (cmp(c, static_cast<unsigned long>(scale_cap)) > 0)
    throw CapExceededError("histogram space size " + c.get_str() +
                               " exceeds the exact-solver cap " +
                               std::to_string(scale_cap),
                           c.get_str());
  const std::vector<Histogram> samples = enumerate_histograms(n, k);
  if (target.size() != samples.size())
    throw ValidationError("target PMF has wrong length");
  Rational total(0);
  for (const Rational& p : target) {
    if (sgn(p) < 0) throw ValidationError("target PMF must be nonnegative");
    total += p;
  }
  if (total != 1) throw ValidationError("target PMF must sum to 1 exactly");

  const std::vector<Histogram> urns = enumerate_histograms(m, k);
  std::vector<std::vector<Rational>> a(
      samples.size(), std::vector<Rational>(urns.size(), Rational(0)));
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t r = 0; r < urns.size(); ++r)
      a[i][r] = hypergeometric_pmf<Rational>(samples[i], urns[r]);

  FeasibilityResult lp = solve_equality_feasibility(a, target);
  if (!lp.feasible) return {};

  std::vector<SimplexWeights<Rational>::Atom> atoms;
  for (std::size_t r = 0; r < urns.size(); ++r)
    if (sgn(lp.solution[r]) > 0) atoms.push_back({urns[r], lp.solution[r]});
  return {true,
          SimplexWeights<Rational>::from_atoms(m, k, std::move(atoms), false)};
}

}  // namespace finexch
