#include <catch2/catch_amalgamated.hpp>

#include "finexch/population.hpp"
#include "finexch/suites.hpp"

using namespace finexch;

namespace {

ExchangeableModel<Rational> goldstein(std::int64_t m) {
  std::vector<SimplexWeights<Rational>::Atom> atoms{
      {Histogram({m, 0}), make_rational(1, 2)},
      {Histogram({0, m}), make_rational(1, 2)}};
  return ExchangeableModel<Rational>(
      LabelSet::numbered(2),
      SimplexWeights<Rational>::from_atoms(m, 2, std::move(atoms), false));
}

const Histogram kFig1{{3, 2, 0, 5, 0}};

}  // namespace

TEST_CASE("population prediction, smoothed") {
  const auto p = population_prediction<Rational>(kFig1, 100,
                                                 PredictionMethod::ht_approx);
  CHECK(p.values.probs() ==
        std::vector<Rational>{make_rational(27, 100), make_rational(20, 100),
                              make_rational(6, 100), make_rational(41, 100),
                              make_rational(6, 100)});
  CHECK(p.n == 10);
  CHECK(p.m == 100);
}

TEST_CASE("population prediction at a census returns the frequencies") {
  const auto ht =
      population_prediction<Rational>(kFig1, 10, PredictionMethod::ht_approx);
  CHECK(ht.values.probs() == ml_approx<Rational>(kFig1).probs());
  const auto model = goldstein(5);
  const auto exact = population_prediction<Rational>(
      Histogram({5, 0}), 5, PredictionMethod::exact, &model);
  CHECK(exact.values.probs() ==
        std::vector<Rational>{Rational(1), Rational(0)});
}

TEST_CASE("population prediction, exact method") {
  const auto model = goldstein(5);
  const auto p = population_prediction<Rational>(
      Histogram({2, 0}), 5, PredictionMethod::exact, &model);
  CHECK(p.values[0] == 1);  // (2/5)*1 + (3/5)*1
  CHECK(p.values[1] == 0);

  CHECK_THROWS_AS(population_prediction<Rational>(Histogram({2, 0}), 5,
                                                  PredictionMethod::exact),
                  ValidationError);
  CHECK_THROWS_AS(population_prediction<Rational>(Histogram({2, 0}), 1,
                                                  PredictionMethod::ht_approx),
                  ValidationError);
}

TEST_CASE("population prediction stays between the two approximations") {
  detail::DeterministicRng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(4));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng.below(30));
    for (std::int64_t i = 0; i < n; ++i)
      ++counts[static_cast<std::size_t>(
          rng.below(static_cast<std::uint64_t>(k)))];
    const Histogram h{counts};
    const std::int64_t m =
        n + static_cast<std::int64_t>(rng.below(50));
    const auto p =
        population_prediction<Rational>(h, m, PredictionMethod::ht_approx);
    const auto fhat = ml_approx<Rational>(h);
    const auto ftilde = ht_approx<Rational>(h);
    Rational sum(0);
    for (int j = 0; j < k; ++j) {
      CHECK(p.values[j] >= std::min(fhat[j], ftilde[j]));
      CHECK(p.values[j] <= std::max(fhat[j], ftilde[j]));
      sum += p.values[j];
    }
    CHECK(sum == 1);
  }
}

TEST_CASE("population prediction interpolates between the approximations") {
  // p - ftilde = (n/m) (fhat - ftilde), exactly
  const Histogram h = kFig1;
  const auto fhat = ml_approx<Rational>(h);
  const auto ftilde = ht_approx<Rational>(h);
  for (const auto& [n_over_m_num, n_over_m_den] :
       std::vector<std::pair<std::int64_t, std::int64_t>>{
           {1, 1}, {1, 2}, {1, 100}}) {
    const std::int64_t m = h.total() * n_over_m_den / n_over_m_num;
    const auto p =
        population_prediction<Rational>(h, m, PredictionMethod::ht_approx);
    for (int j = 0; j < h.k(); ++j)
      CHECK(p.values[j] - ftilde[j] ==
            make_rational(h.total(), m) * (fhat[j] - ftilde[j]));
  }
}

TEST_CASE("grouped prediction composes group-level predictions") {
  const GroupSample<Rational> g1{"A", 60, kFig1, nullptr};
  const GroupSample<Rational> g2{"B", 40, Histogram({1, 1, 1, 1, 1}), nullptr};
  const auto p = grouped_prediction<Rational>({g1, g2},
                                              PredictionMethod::ht_approx, 100);
  CHECK(p.values[0] == make_rational(73, 300));  // 0.24333...
  REQUIRE(p.groups.size() == 2);
  CHECK(p.groups[0].values[0] == make_rational(49, 180));
  CHECK(p.groups[1].values[0] == make_rational(1, 5));

  // single group reduces to population_prediction
  const auto single =
      grouped_prediction<Rational>({g1}, PredictionMethod::ht_approx);
  CHECK(single.values.probs() ==
        population_prediction<Rational>(kFig1, 60,
                                        PredictionMethod::ht_approx)
            .values.probs());

  // identical groups: overall equals either group
  const auto twins = grouped_prediction<Rational>(
      {g1, GroupSample<Rational>{"A2", 60, kFig1, nullptr}},
      PredictionMethod::ht_approx);
  CHECK(twins.values.probs() == twins.groups[0].values.probs());

  CHECK_THROWS_AS(
      grouped_prediction<Rational>({g1, g2}, PredictionMethod::ht_approx, 99),
      ValidationError);
  CHECK_THROWS_AS(
      grouped_prediction<Rational>(
          {g1, GroupSample<Rational>{"C", 4, Histogram({1, 1}), nullptr}},
          PredictionMethod::ht_approx),
      ValidationError);
}

TEST_CASE("grouped prediction with one group matches exact population") {
  const auto model = goldstein(5);
  const GroupSample<Rational> g{"only", 5, Histogram({2, 0}), &model};
  const auto stratified =
      grouped_prediction<Rational>({g}, PredictionMethod::exact);
  const auto direct = population_prediction<Rational>(
      Histogram({2, 0}), 5, PredictionMethod::exact, &model);
  CHECK(stratified.values.probs() == direct.values.probs());
}

TEST_CASE("route comparison on the questionnaire example") {
  // labels are the pairs (1,1),(1,2),(2,1),(2,2),(3,1),(3,2); merge keeps
  // the first coordinate
  const Histogram h({2, 1, 0, 1, 1, 0});
  const LabelMerge merge({0, 0, 1, 1, 2, 2}, 3);
  const auto routes = route_comparison<Rational>(h, merge);
  CHECK(routes.ht_predict_then_sum.probs() ==
        std::vector<Rational>{make_rational(5, 11), make_rational(3, 11),
                              make_rational(3, 11)});
  CHECK(routes.ht_merge_then_predict.probs() ==
        std::vector<Rational>{make_rational(1, 2), make_rational(1, 4),
                              make_rational(1, 4)});
  CHECK(routes.tv == make_rational(1, 22));
  CHECK(std::abs(routes.tv.get_d() - 0.045454545454545456) <= 1e-12);
  CHECK_FALSE(routes.exact.has_value());
}

TEST_CASE("route comparison with identity merge") {
  const auto routes =
      route_comparison<Rational>(kFig1, LabelMerge::identity(5));
  CHECK(routes.ht_predict_then_sum.probs() ==
        routes.ht_merge_then_predict.probs());
  CHECK(routes.tv == 0);
}

TEST_CASE("exact routes coincide for flat and iid priors") {
  detail::DeterministicRng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(3));
    const std::int64_t m = 3 + static_cast<std::int64_t>(rng.below(4));
    const ExchangeableModel<Rational> model =
        trial % 2 == 0
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
    const auto routes = route_comparison<Rational>(h, merge, &model);
    REQUIRE(routes.exact.has_value());
    CHECK(routes.exact->equal);
  }
}

TEST_CASE("exact routes can differ under a general mixture") {
  // Conditioning on the merged sample is coarser than conditioning on the
  // full sample; a two-atom mixture separates the two routes.
  std::vector<SimplexWeights<Rational>::Atom> atoms{
      {Histogram({1, 1, 0}), make_rational(1, 3)},
      {Histogram({1, 0, 1}), make_rational(2, 3)}};
  const ExchangeableModel<Rational> model(
      LabelSet::numbered(3),
      SimplexWeights<Rational>::from_atoms(2, 3, std::move(atoms), false));
  const LabelMerge merge({0, 0, 1}, 2);
  const auto routes =
      route_comparison<Rational>(Histogram({1, 0, 0}), merge, &model);
  REQUIRE(routes.exact.has_value());
  CHECK_FALSE(routes.exact->equal);
  CHECK(routes.exact->predict_then_sum.probs() ==
        std::vector<Rational>{make_rational(1, 3), make_rational(2, 3)});
  CHECK(routes.exact->merge_then_predict.probs() ==
        std::vector<Rational>{make_rational(1, 2), make_rational(1, 2)});
}

TEST_CASE("resolution advice") {
  CHECK_FALSE(resolution_advice(90, 10).under_powered);
  CHECK(resolution_advice(50, 10).under_powered);
  CHECK(resolution_advice(1000, 10).recommended_k == 111);
  CHECK(resolution_advice(4, 10).recommended_k == 1);  // floors at 1
  CHECK(resolution_advice(0, 1).under_powered);
}
