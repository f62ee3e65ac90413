#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finexch/combinat.hpp"
#include "finexch/model.hpp"
#include "finexch/oracle.hpp"

// Seeded randomized verification suites.  Cases are drawn with the library's
// deterministic engine so a (seed, m, k) triple reproduces bit-identically
// anywhere; the checked-in manifest pins the triples the repository runs.

namespace finexch {

using detail::DeterministicRng;

// Random point on the weight simplex: atom support sampled uniformly (all
// atoms when dense), weights proportional to uniform integers in 1..64.
inline SimplexWeights<Rational> random_simplex_weights(
    std::int64_t m, int k, bool sparse, DeterministicRng& rng,
    std::size_t cap = kDefaultEnumerationCap) {
  std::vector<Histogram> all = enumerate_histograms(m, k, cap);
  std::vector<std::size_t> chosen(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) chosen[i] = i;
  if (sparse && all.size() > 1) {
    const std::size_t support =
        1 + static_cast<std::size_t>(rng.below(all.size()));
    for (std::size_t i = 0; i < support; ++i) {  // partial Fisher-Yates
      const std::size_t swap_with =
          i + static_cast<std::size_t>(rng.below(all.size() - i));
      std::swap(chosen[i], chosen[swap_with]);
    }
    chosen.resize(support);
  }
  std::vector<SimplexWeights<Rational>::Atom> atoms;
  atoms.reserve(chosen.size());
  for (std::size_t index : chosen)
    atoms.push_back(
        {all[index], Rational(static_cast<long>(1 + rng.below(64)))});
  return SimplexWeights<Rational>::from_atoms(m, k, std::move(atoms), true);
}

inline ExchangeableModel<Rational> random_model(std::int64_t m, int k,
                                                bool sparse,
                                                DeterministicRng& rng) {
  return ExchangeableModel<Rational>(LabelSet::numbered(k),
                                     random_simplex_weights(m, k, sparse, rng));
}

// Random probability vector with strictly positive exact-rational entries.
inline LabelDistribution<Rational> random_label_distribution(
    int k, DeterministicRng& rng) {
  std::vector<std::int64_t> numerators(static_cast<std::size_t>(k));
  std::int64_t sum = 0;
  for (auto& v : numerators) {
    v = 1 + static_cast<std::int64_t>(rng.below(20));
    sum += v;
  }
  std::vector<Rational> probs;
  probs.reserve(numerators.size());
  for (std::int64_t v : numerators) probs.push_back(make_rational(v, sum));
  return LabelDistribution<Rational>(std::move(probs));
}

// A sample histogram with positive probability under the model, obtained by
// actually drawing from it.
inline Histogram random_reachable_histogram(
    const ExchangeableModel<Rational>& model, std::int64_t n,
    DeterministicRng& rng) {
  return histogram_of(detail::sample_sequence_impl(model, n, rng), model.k());
}

// Random surjective merge onto 1 <= k' <= k labels: one source pinned to
// each target, the rest assigned uniformly.
inline LabelMerge random_surjective_merge(int k, DeterministicRng& rng) {
  const int merged_k = 1 + static_cast<int>(rng.below(
                               static_cast<std::uint64_t>(k)));
  std::vector<int> sources(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) sources[static_cast<std::size_t>(j)] = j;
  for (int t = 0; t < merged_k; ++t) {
    const std::size_t swap_with =
        static_cast<std::size_t>(t) +
        static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(k - t)));
    std::swap(sources[static_cast<std::size_t>(t)], sources[swap_with]);
  }
  std::vector<int> map(static_cast<std::size_t>(k));
  for (int t = 0; t < merged_k; ++t)
    map[static_cast<std::size_t>(sources[static_cast<std::size_t>(t)])] = t;
  for (int j = merged_k; j < k; ++j)
    map[static_cast<std::size_t>(sources[static_cast<std::size_t>(j)])] =
        static_cast<int>(rng.below(static_cast<std::uint64_t>(merged_k)));
  return LabelMerge(std::move(map), merged_k);
}

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::int64_t m = 0;
  int k = 0;
  int cases = 0;
  int failures = 0;
  std::vector<std::string> messages;

  bool passed() const { return failures == 0; }
};

// Representation check: every random model's sequence table is exchangeable
// and matches the urn mixture at every n < m.
inline SuiteReport suite_frt(std::uint64_t seed, std::int64_t m, int k,
                             int cases) {
  SuiteReport report{"frt", seed, m, k, cases, 0, {}};
  DeterministicRng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const auto model = random_model(m, k, i % 2 == 1, rng);
    const SequenceTable table = SequenceTable::from_model(model);
    const Verdict symmetric = verify_exchangeable(table);
    if (!symmetric.pass) {
      ++report.failures;
      report.messages.push_back("case " + std::to_string(i) + ": " +
                                symmetric.detail);
      continue;
    }
    for (std::int64_t n = 0; n < m; ++n) {
      const Verdict verdict = verify_frt(table, n);
      if (!verdict.pass) {
        ++report.failures;
        report.messages.push_back("case " + std::to_string(i) + ", n=" +
                                  std::to_string(n) + ": " + verdict.detail);
        break;
      }
    }
  }
  return report;
}

// Bound check: exact TV distances against beta/2 and gamma/2 plus the
// per-label ratio limits, all recomputed from the sequence table.
inline SuiteReport suite_ht(std::uint64_t seed, std::int64_t m, int k,
                            int cases) {
  SuiteReport report{"ht", seed, m, k, cases, 0, {}};
  DeterministicRng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const auto model = random_model(m, k, i % 2 == 1, rng);
    const std::int64_t n =
        static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m)));
    const Histogram h = random_reachable_histogram(model, n, rng);
    const HtBoundsVerdict verdict = verify_ht_bounds(model, h);
    if (!verdict.pass) {
      ++report.failures;
      report.messages.push_back("case " + std::to_string(i) + ": " +
                                verdict.detail);
    }
  }
  return report;
}

// Agreement (exact) and divergence (smoothed) of the two merge routes.
// Exact commutation is a theorem only for aggregation-closed priors: merging
// the sample discards information under a general mixture, and the merged
// model conditions on strictly less.  The suite therefore draws uniform and
// IID priors; route_comparison still reports coincidence for any model.
inline SuiteReport suite_merge(std::uint64_t seed, std::int64_t m, int k,
                               int cases) {
  SuiteReport report{"merge", seed, m, k, cases, 0, {}};
  if (m < 2) throw ValidationError("merge suite needs m >= 2");
  DeterministicRng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const ExchangeableModel<Rational> model =
        i % 2 == 0
            ? ExchangeableModel<Rational>(LabelSet::numbered(k),
                                          uniform_weights<Rational>(m, k))
            : ExchangeableModel<Rational>(
                  LabelSet::numbered(k),
                  iid_weights(m, random_label_distribution(k, rng)));
    const LabelMerge merge = random_surjective_merge(k, rng);
    const std::int64_t n =
        1 + static_cast<std::int64_t>(
                rng.below(static_cast<std::uint64_t>(m - 1)));
    const Histogram h = random_reachable_histogram(model, n, rng);
    const Verdict verdict = verify_merge_commutes(model, merge, h);
    if (!verdict.pass) {
      ++report.failures;
      report.messages.push_back("case " + std::to_string(i) + ": " +
                                verdict.detail);
      continue;
    }
    // the smoothed routes must reproduce the independently computed TV
    const auto routes = route_comparison<Rational>(h, merge, &model);
    Rational direct(0);
    for (int j = 0; j < merge.target_k(); ++j)
      direct += abs(routes.ht_predict_then_sum[j] -
                    routes.ht_merge_then_predict[j]);
    direct /= 2;
    if (direct != routes.tv || !routes.exact || !routes.exact->equal) {
      ++report.failures;
      report.messages.push_back("case " + std::to_string(i) +
                                ": route comparison inconsistent");
    }
  }
  return report;
}

// Every model-derived marginal must be extendable with a witness that
// reproduces it exactly.
inline SuiteReport suite_extend(std::uint64_t seed, std::int64_t m, int k,
                                int cases) {
  SuiteReport report{"extend", seed, m, k, cases, 0, {}};
  DeterministicRng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const auto model = random_model(m, k, i % 2 == 1, rng);
    const std::int64_t n =
        static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m))) +
        1;
    const HistogramPmf<Rational> marginal = marginal_histogram_pmf(model, n);
    const ExtendabilityResult result =
        is_extendable(marginal.probs, n, k, m);
    if (!result.feasible || !result.witness) {
      ++report.failures;
      report.messages.push_back("case " + std::to_string(i) +
                                ": model marginal reported infeasible");
      continue;
    }
    const ExchangeableModel<Rational> witness_model(LabelSet::numbered(k),
                                                    *result.witness);
    const HistogramPmf<Rational> reproduced =
        marginal_histogram_pmf(witness_model, n);
    if (reproduced.probs != marginal.probs) {
      ++report.failures;
      report.messages.push_back("case " + std::to_string(i) +
                                ": witness does not reproduce the target");
    }
  }
  return report;
}

// Predictive under an IID prior collapses to the base distribution for
// every reachable sample.
inline SuiteReport suite_iid(std::uint64_t seed, std::int64_t m, int k,
                             int cases) {
  SuiteReport report{"iid", seed, m, k, cases, 0, {}};
  DeterministicRng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const LabelDistribution<Rational> p = random_label_distribution(k, rng);
    const ExchangeableModel<Rational> model(LabelSet::numbered(k),
                                            iid_weights(m, p));
    const std::int64_t n =
        static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m)));
    const Histogram h = random_reachable_histogram(model, n, rng);
    if (!(predictive_exact(model, h) == p)) {
      ++report.failures;
      report.messages.push_back("case " + std::to_string(i) +
                                ": predictive differs from the IID base");
    }
  }
  return report;
}

inline SuiteReport run_suite(const std::string& name, std::uint64_t seed,
                             std::int64_t m, int k, int cases) {
  if (name == "frt") return suite_frt(seed, m, k, cases);
  if (name == "ht") return suite_ht(seed, m, k, cases);
  if (name == "merge") return suite_merge(seed, m, k, cases);
  if (name == "extend") return suite_extend(seed, m, k, cases);
  if (name == "iid") return suite_iid(seed, m, k, cases);
  throw ValidationError("unknown suite '" + name + "'");
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"frt", "ht", "merge", "extend",
                                              "iid"};
  return names;
}

}  // namespace finexch
