// Builds a small exchangeable model, draws a sample from it, and prints the
// exact predictive next to its add-one approximation with the certified
// total-variation bound.

#include <iostream>

#include "finexch/finexch.hpp"

int main() {
  using namespace finexch;

  const std::int64_t population = 30;
  const LabelSet labels({"red", "green", "blue"});

  // prior: every urn composition equally likely
  const ExchangeableModel<Rational> model(
      labels, uniform_weights<Rational>(population, labels.size()));

  const std::vector<int> sample = sample_sequence(model, 8, /*seed=*/42);
  const Histogram h = histogram_of(sample, labels.size());

  std::cout << "sample:";
  for (int x : sample) std::cout << " " << labels.name(x);
  std::cout << "\n\n" << render_sample_barchart(h, labels) << "\n";

  const ApproxReport<Rational> report = ht_report(model, h);
  for (int j = 0; j < labels.size(); ++j)
    std::cout << labels.name(j) << ": exact " << to_fraction_string(report.fstar[j])
              << ", add-one " << to_fraction_string(report.ftilde[j]) << "\n";
  std::cout << "\nbeta = "
            << (report.beta.finite() ? to_fraction_string(report.beta.value())
                                     : std::string("inf"))
            << ", TV(f*, f~) = " << to_fraction_string(report.tv_star_tilde)
            << "\n";

  // expected proportions across the whole population of 30
  const auto prediction =
      population_prediction<Rational>(h, population, PredictionMethod::exact,
                                      &model);
  std::cout << "\nexpected population proportions:";
  for (int j = 0; j < labels.size(); ++j)
    std::cout << " " << to_fraction_string(prediction.values[j]);
  std::cout << "\n";
  return 0;
}
