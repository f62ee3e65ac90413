#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "finexch/combinat.hpp"
#include "finexch/distribution.hpp"
#include "finexch/errors.hpp"
#include "finexch/numeric.hpp"

namespace finexch {

// A point on the simplex over all m-histograms: the universal parameter of
// an exchangeable model.  Stored sparsely as (histogram, weight) atoms in
// ascending lexicographic order, so priors supported on a handful of
// histograms work even when the full histogram space is astronomical.
template <class R>
class SimplexWeights {
 public:
  struct Atom {
    Histogram histogram;
    R weight;
  };

  // Validates dimensions, nonnegativity and distinctness.  Without the
  // renormalize flag the weights must already sum to 1 within 1e-9; they are
  // then scaled by their exact sum so the stored weights sum to 1 exactly in
  // rational mode.  With the flag any positive total is accepted.
  static SimplexWeights from_atoms(std::int64_t m, int k,
                                   std::vector<Atom> atoms, bool renormalize) {
    if (m < 0) throw ValidationError("population size must be nonnegative");
    if (k < 1) throw ValidationError("label count must be positive");
    if (atoms.empty()) throw ValidationError("weights need at least one atom");
    for (const Atom& a : atoms) {
      if (a.histogram.k() != k)
        throw ValidationError("atom histogram has wrong label count");
      if (a.histogram.total() != m)
        throw ValidationError("atom histogram total " +
                              std::to_string(a.histogram.total()) +
                              " does not match population size " +
                              std::to_string(m));
      if constexpr (num<R>::exact) {
        if (sgn(a.weight) < 0)
          throw ValidationError("atom weights must be nonnegative");
      }
    }
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
      return a.histogram < b.histogram;
    });
    for (std::size_t i = 0; i + 1 < atoms.size(); ++i)
      if (atoms[i].histogram == atoms[i + 1].histogram)
        throw ValidationError("duplicate atom histogram");

    R sum = num<R>::zero();
    for (const Atom& a : atoms) sum = sum + a.weight;
    if (num<R>::is_zero(sum))
      throw ValidationError("atom weights must not all be zero");
    if (!renormalize &&
        std::abs(num<R>::to_double(sum) - 1.0) > 1e-9)
      throw ValidationError("atom weights must sum to 1 within 1e-9");
    for (Atom& a : atoms) a.weight = a.weight / sum;

    std::erase_if(atoms,
                  [](const Atom& a) { return num<R>::is_zero(a.weight); });
    SimplexWeights w;
    w.m_ = m;
    w.k_ = k;
    w.atoms_ = std::move(atoms);
    return w;
  }

  std::int64_t m() const { return m_; }
  int k() const { return k_; }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }

  // Weight of an m-histogram; zero when not an atom.
  R weight_at(const Histogram& h) const {
    auto it = std::lower_bound(
        atoms_.begin(), atoms_.end(), h,
        [](const Atom& a, const Histogram& g) { return a.histogram < g; });
    if (it != atoms_.end() && it->histogram == h) return it->weight;
    return num<R>::zero();
  }

 private:
  SimplexWeights() = default;

  std::int64_t m_ = 0;
  int k_ = 1;
  std::vector<Atom> atoms_;
};

// Weight 1/c on every m-histogram.
template <class R>
SimplexWeights<R> uniform_weights(std::int64_t m, int k,
                                  std::size_t cap = kDefaultEnumerationCap) {
  detail::check_enumeration_cap(m, k, cap);
  const std::int64_t c =
      static_cast<std::int64_t>(histogram_space_size(m, k).get_ui());
  std::vector<typename SimplexWeights<R>::Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(c));
  const R w = num<R>::from_ratio(1, c);
  for_each_histogram(
      m, k,
      [&](std::span<const std::int64_t> counts) {
        atoms.push_back({Histogram(std::vector<std::int64_t>(counts.begin(),
                                                             counts.end())),
                         w});
      },
      cap);
  return SimplexWeights<R>::from_atoms(m, k, std::move(atoms), false);
}

// The IID embedding: w_r = M(u_r) * prod_j p_j^{u_rj}.  Labels with zero
// probability are pruned before enumeration.
template <class R>
SimplexWeights<R> iid_weights(std::int64_t m, const LabelDistribution<R>& p,
                              std::size_t cap = kDefaultEnumerationCap) {
  const int k = p.k();
  std::vector<int> support;
  for (int j = 0; j < k; ++j)
    if (!num<R>::is_zero(p[j])) support.push_back(j);
  const int ks = static_cast<int>(support.size());

  std::vector<typename SimplexWeights<R>::Atom> atoms;
  for_each_histogram(
      m, ks,
      [&](std::span<const std::int64_t> counts) {
        std::vector<std::int64_t> full(static_cast<std::size_t>(k), 0);
        R w = num<R>::multinomial(counts);
        for (int i = 0; i < ks; ++i) {
          full[static_cast<std::size_t>(support[static_cast<std::size_t>(i)])] =
              counts[static_cast<std::size_t>(i)];
          w = w * num<R>::pow(p[support[static_cast<std::size_t>(i)]],
                              counts[static_cast<std::size_t>(i)]);
        }
        atoms.push_back({Histogram(std::move(full)), std::move(w)});
      },
      cap);
  return SimplexWeights<R>::from_atoms(m, k, std::move(atoms), false);
}

// Convenience spelling matching the other weight constructors.
template <class R>
SimplexWeights<R> weights_from_atoms(
    std::int64_t m, int k, std::vector<typename SimplexWeights<R>::Atom> atoms,
    bool renormalize) {
  return SimplexWeights<R>::from_atoms(m, k, std::move(atoms), renormalize);
}

// An exchangeable model for a population of size m over a finite label set:
// a label set plus simplex weights over the m-histograms.
template <class R>
struct ExchangeableModel {
  ExchangeableModel(LabelSet labels_in, SimplexWeights<R> weights_in)
      : labels(std::move(labels_in)), weights(std::move(weights_in)) {
    if (labels.size() != weights.k())
      throw ValidationError("label set size does not match weights");
  }

  std::int64_t m() const { return weights.m(); }
  int k() const { return labels.size(); }

  LabelSet labels;
  SimplexWeights<R> weights;
};

// f_H^n(h) = sum_r H^n(h; u_r) w_r for n < m; the weight itself at n = m.
template <class R>
R sample_histogram_marginal(const ExchangeableModel<R>& model,
                            const Histogram& h) {
  if (h.k() != model.k()) throw ValidationError("histogram dimension mismatch");
  if (h.total() > model.m())
    throw ValidationError("sample size exceeds population size");
  if (h.total() == model.m()) return model.weights.weight_at(h);
  R sum = num<R>::zero();
  for (const auto& atom : model.weights.atoms())
    sum = sum + hypergeometric_pmf<R>(h, atom.histogram) * atom.weight;
  return sum;
}

// The k probabilities f_H^{n+1}(h + e_j), j = 1..k: everything the exact
// predictive, beta and gamma need.  Evaluated atom by atom with shared
// prefix/suffix binomial products, never materializing a full marginal.
template <class R>
std::vector<R> add_one_marginals(const ExchangeableModel<R>& model,
                                 const Histogram& h) {
  const int k = model.k();
  if (h.k() != k) throw ValidationError("histogram dimension mismatch");
  const std::int64_t n = h.total();
  if (n >= model.m())
    throw ValidationError(
        "sample size must be smaller than the population size");

  std::vector<R> result(static_cast<std::size_t>(k), num<R>::zero());
  const R denom = num<R>::binomial(model.m(), n + 1);
  std::vector<R> prefix(static_cast<std::size_t>(k + 1));
  std::vector<R> suffix(static_cast<std::size_t>(k + 1));
  for (const auto& atom : model.weights.atoms()) {
    const Histogram& u = atom.histogram;
    // prefix[j] = prod_{i<j} C(u_i, h_i), suffix[j] = prod_{i>=j} C(u_i, h_i)
    prefix[0] = num<R>::one();
    for (int j = 0; j < k; ++j)
      prefix[static_cast<std::size_t>(j + 1)] =
          prefix[static_cast<std::size_t>(j)] *
          num<R>::binomial(u.count(j), h.count(j));
    suffix[static_cast<std::size_t>(k)] = num<R>::one();
    for (int j = k - 1; j >= 0; --j)
      suffix[static_cast<std::size_t>(j)] =
          suffix[static_cast<std::size_t>(j + 1)] *
          num<R>::binomial(u.count(j), h.count(j));
    for (int j = 0; j < k; ++j) {
      const R numer = prefix[static_cast<std::size_t>(j)] *
                      num<R>::binomial(u.count(j), h.count(j) + 1) *
                      suffix[static_cast<std::size_t>(j + 1)];
      result[static_cast<std::size_t>(j)] =
          result[static_cast<std::size_t>(j)] + numer * atom.weight;
    }
  }
  for (R& v : result) v = v / denom;
  return result;
}

// PMF of a sequence of n <= m label indices (0-based).  Depends on the
// sequence only through its histogram.
template <class R>
R sequence_pmf(const ExchangeableModel<R>& model, std::span<const int> x) {
  const Histogram h = histogram_of(x, model.k());
  if (h.total() > model.m())
    throw ValidationError("sequence longer than the population");
  const R hist_prob = sample_histogram_marginal(model, h);
  return hist_prob / R(num<R>::multinomial(h.counts()));
}

// Dense marginal PMF over all n-histograms, in enumeration order.
template <class R>
struct HistogramPmf {
  std::int64_t n;
  int k;
  std::vector<Histogram> support;  // ascending lexicographic
  std::vector<R> probs;
};

template <class R>
HistogramPmf<R> marginal_histogram_pmf(const ExchangeableModel<R>& model,
                                       std::int64_t n,
                                       std::size_t cap = kDefaultEnumerationCap) {
  if (n < 0 || n > model.m())
    throw ValidationError("marginal size must satisfy 0 <= n <= m");
  HistogramPmf<R> pmf;
  pmf.n = n;
  pmf.k = model.k();
  pmf.support = enumerate_histograms(n, model.k(), cap);
  pmf.probs.reserve(pmf.support.size());
  for (const Histogram& h : pmf.support)
    pmf.probs.push_back(sample_histogram_marginal(model, h));
  return pmf;
}

// Exact predictive distribution of the next unobserved element given a
// sample with histogram h (total n < m):
//   f*_j  proportional to  f_H^{n+1}(h + e_j) * (h_j + 1).
template <class R>
LabelDistribution<R> predictive_exact(const ExchangeableModel<R>& model,
                                      const Histogram& h) {
  std::vector<R> mass = add_one_marginals(model, h);
  for (int j = 0; j < h.k(); ++j)
    mass[static_cast<std::size_t>(j)] =
        mass[static_cast<std::size_t>(j)] * num<R>::from_int(h.count(j) + 1);
  return LabelDistribution<R>::normalized(std::move(mass));
}

namespace detail {

inline std::vector<std::string> merged_label_names(const LabelSet& labels,
                                                   const LabelMerge& merge) {
  std::vector<std::string> names(static_cast<std::size_t>(merge.target_k()));
  for (int j = 0; j < labels.size(); ++j) {
    std::string& slot = names[static_cast<std::size_t>(merge.target(j))];
    if (!slot.empty()) slot += "+";
    slot += labels.name(j);
  }
  return names;
}

}  // namespace detail

// Relabel the population: merged weights sum the weights of all urn
// compositions that collapse to the same merged histogram.
template <class R>
ExchangeableModel<R> merge_model(const ExchangeableModel<R>& model,
                                 const LabelMerge& merge) {
  if (merge.source_k() != model.k())
    throw ValidationError("merge map length must equal label count");
  std::map<Histogram, R> folded;
  for (const auto& atom : model.weights.atoms()) {
    const Histogram merged = merge_histogram(atom.histogram, merge);
    auto [it, inserted] = folded.emplace(merged, atom.weight);
    if (!inserted) it->second = it->second + atom.weight;
  }
  std::vector<typename SimplexWeights<R>::Atom> atoms;
  atoms.reserve(folded.size());
  for (auto& [hist, weight] : folded) atoms.push_back({hist, weight});
  return ExchangeableModel<R>(
      LabelSet(detail::merged_label_names(model.labels, merge)),
      SimplexWeights<R>::from_atoms(model.m(), merge.target_k(),
                                    std::move(atoms), false));
}

namespace detail {

// Raw engine draws only: <random> distributions are not portable across
// standard library implementations, and seeded runs must be reproducible.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

  double unit() {  // uniform in [0, 1) with 53 random bits
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

template <class R>
std::size_t pick_atom_index(const SimplexWeights<R>& weights,
                            DeterministicRng& rng) {
  if constexpr (num<R>::exact) {
    const Rational u = make_rational(Integer(rng.next()),
                                     Integer(1) << 64);
    Rational cum(0);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      cum += weights.atoms()[i].weight;
      if (u < cum) return i;
    }
  } else {
    const double u = rng.unit();
    double cum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      cum += num<R>::to_double(weights.atoms()[i].weight);
      if (u < cum) return i;
    }
  }
  return weights.size() - 1;
}

template <class R>
std::vector<int> sample_sequence_impl(const ExchangeableModel<R>& model,
                                      std::int64_t n, DeterministicRng& rng) {
  if (n < 0 || n > model.m())
    throw ValidationError("sample size must satisfy 0 <= n <= m");
  const auto& atom =
      model.weights.atoms()[pick_atom_index(model.weights, rng)];
  std::vector<std::int64_t> remaining = atom.histogram.counts();
  std::int64_t left = atom.histogram.total();
  std::vector<int> sequence;
  sequence.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t d =
        static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(left)));
    for (int j = 0; j < model.k(); ++j) {
      if (d < remaining[static_cast<std::size_t>(j)]) {
        sequence.push_back(j);
        --remaining[static_cast<std::size_t>(j)];
        --left;
        break;
      }
      d -= remaining[static_cast<std::size_t>(j)];
    }
  }
  return sequence;
}

}  // namespace detail

// Generative counterpart of the representation: draw an urn composition from
// the weights, then draw n elements from it without replacement.  The
// histogram of the result is distributed as the n-histogram marginal.
// Deterministic for a given seed.
template <class R>
std::vector<int> sample_sequence(const ExchangeableModel<R>& model,
                                 std::int64_t n, std::uint64_t seed) {
  detail::DeterministicRng rng(seed);
  return detail::sample_sequence_impl(model, n, rng);
}

}  // namespace finexch
