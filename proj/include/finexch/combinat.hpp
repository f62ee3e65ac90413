#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "finexch/errors.hpp"
#include "finexch/numeric.hpp"
#include "finexch/rational.hpp"

namespace finexch {

// Anything whose histogram space would exceed this many entries refuses to
// enumerate; sparse priors avoid enumeration entirely.
inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

// The finite realm: k distinct labels in a fixed order.  Indices are
// 0-based in code (documentation and CLI output use 1-based positions).
class LabelSet {
 public:
  explicit LabelSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw ValidationError("label set must be nonempty");
    auto sorted = names_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError("label names must be distinct");
  }

  static LabelSet numbered(int k) {
    if (k < 1) throw ValidationError("label count must be positive");
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(k));
    for (int j = 1; j <= k; ++j) names.push_back(std::to_string(j));
    return LabelSet(std::move(names));
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int j) const {
    return names_.at(static_cast<std::size_t>(j));
  }
  const std::vector<std::string>& names() const { return names_; }

  // -1 when absent.
  int index_of(std::string_view name) const {
    for (std::size_t j = 0; j < names_.size(); ++j)
      if (names_[j] == name) return static_cast<int>(j);
    return -1;
  }

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  std::vector<std::string> names_;
};

// A vector of nonnegative label counts; the sufficient summary of an
// exchangeable sample.  Ordered lexicographically on the raw counts.
class Histogram {
 public:
  explicit Histogram(std::vector<std::int64_t> counts)
      : counts_(std::move(counts)) {
    if (counts_.empty()) throw ValidationError("histogram must have k >= 1");
    total_ = 0;
    for (std::int64_t c : counts_) {
      if (c < 0) throw ValidationError("histogram counts must be nonnegative");
      total_ += c;
    }
  }

  static Histogram zeros(int k) {
    return Histogram(std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));
  }

  int k() const { return static_cast<int>(counts_.size()); }
  std::int64_t total() const { return total_; }
  std::int64_t count(int j) const {
    return counts_.at(static_cast<std::size_t>(j));
  }
  const std::vector<std::int64_t>& counts() const { return counts_; }

  Histogram add_one(int j) const {
    if (j < 0 || j >= k()) throw ValidationError("label index out of range");
    Histogram h = *this;
    ++h.counts_[static_cast<std::size_t>(j)];
    ++h.total_;
    return h;
  }

  // Componentwise counts <= other.counts (urn feasibility).
  bool fits_within(const Histogram& other) const {
    if (other.k() != k()) throw ValidationError("histogram dimension mismatch");
    for (int j = 0; j < k(); ++j)
      if (counts_[static_cast<std::size_t>(j)] >
          other.counts_[static_cast<std::size_t>(j)])
        return false;
    return true;
  }

  friend bool operator==(const Histogram& a, const Histogram& b) {
    return a.counts_ == b.counts_;
  }
  friend std::strong_ordering operator<=>(const Histogram& a,
                                          const Histogram& b) {
    return a.counts_ <=> b.counts_;
  }

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

// A relabelling that merges labels: map[j] is the 0-based target index of
// source label j.  Must be surjective onto 0..merged_k-1.
class LabelMerge {
 public:
  LabelMerge(std::vector<int> map, int merged_k)
      : map_(std::move(map)), merged_k_(merged_k) {
    if (merged_k_ < 1) throw ValidationError("merged label count must be >= 1");
    std::vector<bool> hit(static_cast<std::size_t>(merged_k_), false);
    for (int t : map_) {
      if (t < 0 || t >= merged_k_)
        throw ValidationError("merge target out of range");
      hit[static_cast<std::size_t>(t)] = true;
    }
    if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }))
      throw ValidationError("merge map must be surjective onto merged labels");
  }

  static LabelMerge identity(int k) {
    std::vector<int> map(static_cast<std::size_t>(k));
    std::iota(map.begin(), map.end(), 0);
    return LabelMerge(std::move(map), k);
  }

  static LabelMerge all_to_one(int k) {
    return LabelMerge(std::vector<int>(static_cast<std::size_t>(k), 0), 1);
  }

  int source_k() const { return static_cast<int>(map_.size()); }
  int target_k() const { return merged_k_; }
  int target(int j) const { return map_.at(static_cast<std::size_t>(j)); }
  const std::vector<int>& map() const { return map_; }

 private:
  std::vector<int> map_;
  int merged_k_;
};

// c = C(m+k-1, k-1): the number of distinct m-histograms over k labels.
inline Integer histogram_space_size(std::int64_t m, int k) {
  if (m < 0) throw ValidationError("population size must be nonnegative");
  if (k < 1) throw ValidationError("label count must be positive");
  return binomial_integer(m + k - 1, k - 1);
}

namespace detail {

inline void check_enumeration_cap(std::int64_t m, int k, std::size_t cap) {
  const Integer c = histogram_space_size(m, k);
  if (cmp(c, static_cast<unsigned long>(cap)) > 0)
    throw CapExceededError("histogram space size " + c.get_str() +
                               " exceeds enumeration cap " +
                               std::to_string(cap),
                           c.get_str());
}

// Advance to the successor in ascending lexicographic order; false at the end.
inline bool next_histogram(std::vector<std::int64_t>& counts) {
  const int k = static_cast<int>(counts.size());
  std::int64_t tail = 0;
  for (int i = k - 1; i >= 1; --i) {
    tail += counts[static_cast<std::size_t>(i)];
    if (tail > 0) {
      ++counts[static_cast<std::size_t>(i - 1)];
      for (int j = i; j < k; ++j) counts[static_cast<std::size_t>(j)] = 0;
      counts[static_cast<std::size_t>(k - 1)] = tail - 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Visits every m-histogram over k labels in ascending lexicographic order.
template <class Fn>
void for_each_histogram(std::int64_t m, int k, Fn&& fn,
                        std::size_t cap = kDefaultEnumerationCap) {
  detail::check_enumeration_cap(m, k, cap);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
  counts.back() = m;
  do {
    fn(std::span<const std::int64_t>(counts));
  } while (detail::next_histogram(counts));
}

// The list position defines the index r used by simplex weights.
inline std::vector<Histogram> enumerate_histograms(
    std::int64_t m, int k, std::size_t cap = kDefaultEnumerationCap) {
  detail::check_enumeration_cap(m, k, cap);
  std::vector<Histogram> out;
  out.reserve(histogram_space_size(m, k).get_ui());
  for_each_histogram(
      m, k,
      [&](std::span<const std::int64_t> counts) {
        out.push_back(
            Histogram(std::vector<std::int64_t>(counts.begin(), counts.end())));
      },
      cap);
  return out;
}

// Rank of h within the ascending lexicographic enumeration of its
// (total, k) histogram space.
inline std::size_t histogram_rank(const Histogram& h) {
  const int k = h.k();
  Integer rank(0);
  std::int64_t remaining = h.total();
  for (int j = 0; j + 1 < k; ++j) {
    // completions that keep position j strictly smaller than h's count
    for (std::int64_t t = 0; t < h.count(j); ++t)
      rank += binomial_integer(remaining - t + k - j - 2, k - j - 2);
    remaining -= h.count(j);
  }
  if (!rank.fits_ulong_p())
    throw CapExceededError("histogram rank " + rank.get_str() +
                               " does not fit in an index",
                           rank.get_str());
  return static_cast<std::size_t>(rank.get_ui());
}

// n! / (h_1! ... h_k!): the number of distinct sequences with histogram h.
inline Integer multinomial_coeff(const Histogram& h) {
  Integer result(1);
  std::int64_t partial = 0;
  for (std::int64_t c : h.counts()) {
    partial += c;
    result *= binomial_integer(partial, c);
  }
  return result;
}

// Probability of drawing sample histogram h in n draws without replacement
// from an urn of composition u (|u| = m >= n).  Exactly zero unless h fits
// within u; the LogReal instantiation is evaluated in log space.
template <class R>
R hypergeometric_pmf(const Histogram& h, const Histogram& u) {
  if (h.k() != u.k()) throw ValidationError("histogram dimension mismatch");
  if (h.total() > u.total())
    throw ValidationError("sample size exceeds urn size");
  if (!h.fits_within(u)) return num<R>::zero();
  R numer = num<R>::one();
  for (int j = 0; j < h.k(); ++j)
    numer = numer * num<R>::binomial(u.count(j), h.count(j));
  return numer / num<R>::binomial(u.total(), h.total());
}

inline Rational hypergeometric_pmf_rational(const Histogram& h,
                                            const Histogram& u) {
  return hypergeometric_pmf<Rational>(h, u);
}

// Histogram of a sequence of 0-based label indices.
inline Histogram histogram_of(std::span<const int> sequence, int k) {
  if (k < 1) throw ValidationError("label count must be positive");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
  for (int x : sequence) {
    if (x < 0 || x >= k) throw ValidationError("label index out of range");
    ++counts[static_cast<std::size_t>(x)];
  }
  return Histogram(std::move(counts));
}

inline Histogram merge_histogram(const Histogram& h, const LabelMerge& merge) {
  if (merge.source_k() != h.k())
    throw ValidationError("merge map length must equal label count");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(merge.target_k()),
                                   0);
  for (int j = 0; j < h.k(); ++j)
    counts[static_cast<std::size_t>(merge.target(j))] += h.count(j);
  return Histogram(std::move(counts));
}

}  // namespace finexch
