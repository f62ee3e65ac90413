#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "finexch/approx.hpp"
#include "finexch/barchart.hpp"
#include "finexch/combinat.hpp"
#include "finexch/errors.hpp"
#include "finexch/model.hpp"
#include "finexch/population.hpp"
#include "finexch/prior_io.hpp"
#include "finexch/suites.hpp"
#include "finexch/survey.hpp"

namespace finexch {

enum class NumericMode { rational, floating };
enum class OutputFormat { json, text };

struct PriorSpec {
  enum class Kind { uniform, iid, atoms } kind = Kind::uniform;
  std::vector<std::string> iid_probs;  // textual, parsed per numeric mode
  std::string atoms_path;

  // "uniform" | "iid:p1,p2,..." | "atoms:PATH"
  static PriorSpec parse(const std::string& text);
};

struct RunConfig {
  std::string command;
  std::optional<std::int64_t> m;
  std::vector<std::pair<std::string, std::int64_t>> group_sizes;
  PriorSpec prior;
  NumericMode mode = NumericMode::rational;
  OutputFormat output = OutputFormat::json;
  std::uint64_t seed = 0;
  std::optional<std::vector<int>> merge_targets;  // 1-based, one per label
  std::optional<std::int64_t> draws;              // simulate
  PredictionMethod method = PredictionMethod::ht_approx;
  std::optional<int> k;  // simulate/verify without a survey
  // verify
  std::string suite = "frt";
  std::optional<std::string> manifest_path;
  int cases = 20;
  std::optional<std::int64_t> verify_m;
  std::optional<int> verify_k;

  std::size_t cap = kDefaultEnumerationCap;
};

struct CommandResult {
  nlohmann::ordered_json json;
  std::string text;
  int exit_code = 0;
};

inline PriorSpec PriorSpec::parse(const std::string& text) {
  PriorSpec spec;
  if (text == "uniform") {
    spec.kind = Kind::uniform;
    return spec;
  }
  if (text.rfind("iid:", 0) == 0) {
    spec.kind = Kind::iid;
    std::string rest = text.substr(4);
    std::size_t start = 0;
    while (start <= rest.size()) {
      std::size_t comma = rest.find(',', start);
      if (comma == std::string::npos) comma = rest.size();
      spec.iid_probs.push_back(rest.substr(start, comma - start));
      start = comma + 1;
    }
    if (spec.iid_probs.empty())
      throw ValidationError("iid prior needs probabilities");
    return spec;
  }
  if (text.rfind("atoms:", 0) == 0) {
    spec.kind = Kind::atoms;
    spec.atoms_path = text.substr(6);
    if (spec.atoms_path.empty())
      throw ValidationError("atoms prior needs a file path");
    return spec;
  }
  throw ValidationError("prior must be uniform, iid:p1,...,pk or atoms:PATH");
}

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <class R>
LabelDistribution<R> parse_probability_vector(
    const std::vector<std::string>& texts) {
  std::vector<R> probs;
  probs.reserve(texts.size());
  for (const auto& t : texts) probs.push_back(parse_weight<R>(t));
  R sum = num<R>::zero();
  for (const R& p : probs) sum = sum + p;
  if (std::abs(num<R>::to_double(sum) - 1.0) > 1e-9)
    throw ValidationError("iid probabilities must sum to 1 within 1e-9");
  for (R& p : probs) p = p / sum;
  return LabelDistribution<R>(std::move(probs));
}

template <class R>
ExchangeableModel<R> build_model(const PriorSpec& prior, const LabelSet& labels,
                                 std::int64_t m, std::size_t cap) {
  switch (prior.kind) {
    case PriorSpec::Kind::uniform:
      return ExchangeableModel<R>(labels,
                                  uniform_weights<R>(m, labels.size(), cap));
    case PriorSpec::Kind::iid: {
      if (static_cast<int>(prior.iid_probs.size()) != labels.size())
        throw ValidationError("iid prior needs exactly k probabilities");
      return ExchangeableModel<R>(
          labels,
          iid_weights(m, parse_probability_vector<R>(prior.iid_probs), cap));
    }
    case PriorSpec::Kind::atoms: {
      const PriorAtomsFile file = parse_prior_atoms(
          nlohmann::json::parse(read_file(prior.atoms_path)));
      if (file.k != labels.size())
        throw ValidationError("prior atoms file has k = " +
                              std::to_string(file.k) + ", survey has k = " +
                              std::to_string(labels.size()));
      if (!file.labels.empty() && file.labels != labels.names())
        throw ValidationError(
            "prior atoms file labels do not match the survey label set");
      if (file.m != m)
        throw ValidationError("prior atoms file has m = " +
                              std::to_string(file.m) +
                              ", requested population size is " +
                              std::to_string(m));
      return ExchangeableModel<R>(labels, instantiate_prior_atoms<R>(file));
    }
  }
  throw ValidationError("unreachable prior kind");
}

template <class R>
nlohmann::ordered_json json_number(const R& value) {
  if constexpr (num<R>::exact)
    return to_fraction_string(value);
  else
    return num<R>::to_double(value);
}

inline nlohmann::ordered_json json_real(const Rational& value) {
  return to_fraction_string(value);
}
inline nlohmann::ordered_json json_real(double value) { return value; }

template <class T>
nlohmann::ordered_json json_extended(const Extended<T>& value) {
  if (!value.finite()) return "inf";
  return json_real(value.value());
}

template <class R>
nlohmann::ordered_json json_distribution(const LabelDistribution<R>& d) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int j = 0; j < d.k(); ++j) arr.push_back(json_number<R>(d[j]));
  return arr;
}

// Value text for tables and charts: exact fractions in rational mode.
template <class R>
std::vector<std::string> value_strings(const LabelDistribution<R>& d) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(d.k()));
  for (int j = 0; j < d.k(); ++j) {
    if constexpr (num<R>::exact)
      out.push_back(to_fraction_string(d[j]));
    else
      out.push_back(format_double(num<R>::to_double(d[j])));
  }
  return out;
}

inline nlohmann::ordered_json base_report(const std::string& command,
                                          NumericMode mode) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["n"] = nullptr;
  j["m"] = nullptr;
  j["k"] = nullptr;
  j["labels"] = nullptr;
  j["histogram"] = nullptr;
  j["mode"] = mode == NumericMode::rational ? "rational" : "float";
  j["prediction"] = nullptr;
  j["bounds"] = nullptr;
  j["warnings"] = nlohmann::ordered_json::array();
  return j;
}

inline void fill_sample_fields(nlohmann::ordered_json& j, const LabelSet& labels,
                               const Histogram& h,
                               std::optional<std::int64_t> m) {
  j["n"] = h.total();
  if (m) j["m"] = *m;
  j["k"] = labels.size();
  j["labels"] = labels.names();
  j["histogram"] = h.counts();
}

inline void add_resolution_warning(nlohmann::ordered_json& j,
                                   std::vector<std::string>& text_warnings,
                                   std::int64_t n, int k,
                                   const std::string& prefix = "") {
  const ResolutionAdvice advice = resolution_advice(n, k);
  if (!advice.under_powered) return;
  std::ostringstream msg;
  msg << prefix << "under-powered survey: n = " << n << " is less than 9k = "
      << 9 * k << " (recommended maximum label count: " << advice.recommended_k
      << ")";
  j["warnings"].push_back(msg.str());
  text_warnings.push_back(msg.str());
}

template <class R>
nlohmann::ordered_json bounds_json(const ApproxReport<R>& report) {
  nlohmann::ordered_json b;
  b["beta"] = json_extended(report.beta);
  b["gamma"] = json_extended(report.gamma);
  b["tv_star_tilde"] = json_real(report.tv_star_tilde);
  b["tv_star_hatprime"] = json_real(report.tv_star_hatprime);
  b["tv_tilde_hat"] = json_real(report.tv_tilde_hat);
  b["crude_gamma_bound"] = json_extended(report.crude_gamma_bound);
  b["crude_gamma_bound_held"] = report.crude_bound_held;
  b["certificates"] = nlohmann::ordered_json::array();
  for (const BoundCheck& check : report.certificates) {
    nlohmann::ordered_json c;
    c["name"] = check.name;
    c["holds"] = check.holds;
    c["trivial"] = check.trivial;
    b["certificates"].push_back(std::move(c));
  }
  b["add_one_marginals"] = nlohmann::ordered_json::array();
  for (const R& v : report.add_one)
    b["add_one_marginals"].push_back(json_number<R>(v));
  b["u"] = nlohmann::ordered_json::array();
  for (const auto& u : report.u)
    b["u"].push_back(u ? json_real(*u) : nlohmann::ordered_json(nullptr));
  b["v"] = nlohmann::ordered_json::array();
  for (const auto& v : report.v) b["v"].push_back(json_real(v));
  return b;
}

inline std::string plain(const nlohmann::ordered_json& value) {
  return value.is_string() ? value.get<std::string>() : value.dump();
}

inline std::string certificates_text(const nlohmann::ordered_json& bounds) {
  std::ostringstream out;
  out << "beta = " << plain(bounds["beta"])
      << ", gamma = " << plain(bounds["gamma"]) << "\n";
  out << "TV(f*, f~) = " << plain(bounds["tv_star_tilde"])
      << ", TV(f*, f^') = " << plain(bounds["tv_star_hatprime"]) << "\n";
  for (const auto& cert : bounds["certificates"]) {
    out << "  [" << (cert["holds"].get<bool>() ? "ok" : "VIOLATED") << "] "
        << cert["name"].get<std::string>();
    if (cert["trivial"].get<bool>()) out << " (trivial: bound infinite)";
    out << "\n";
  }
  return out.str();
}

inline LabelMerge merge_from_targets(const std::vector<int>& targets) {
  int merged_k = 0;
  std::vector<int> map;
  map.reserve(targets.size());
  for (int t : targets) {
    if (t < 1) throw ValidationError("merge targets are 1-based");
    map.push_back(t - 1);
    merged_k = std::max(merged_k, t);
  }
  return LabelMerge(std::move(map), merged_k);
}

// ---- per-command implementations, generic over the numeric mode ----

template <class R>
CommandResult run_predict(const RunConfig& config,
                          const SurveyDataset& dataset, bool bounds_only) {
  if (!config.m) throw ValidationError("--m is required");
  const Histogram h = dataset.histogram();
  if (*config.m < dataset.size())
    throw ValidationError("population size m is smaller than the survey");
  const ExchangeableModel<R> model =
      build_model<R>(config.prior, dataset.labels(), *config.m, config.cap);
  const ApproxReport<R> report = ht_report(model, h);

  nlohmann::ordered_json j = base_report(config.command, config.mode);
  fill_sample_fields(j, dataset.labels(), h, config.m);
  if (!bounds_only) {
    nlohmann::ordered_json p;
    p["fstar"] = json_distribution(report.fstar);
    p["ftilde"] = json_distribution(report.ftilde);
    p["fhat"] = json_distribution(report.fhat);
    p["fhatprime"] = json_distribution(report.fhatprime);
    j["prediction"] = std::move(p);
  }
  j["bounds"] = bounds_json(report);
  std::vector<std::string> text_warnings;
  add_resolution_warning(j, text_warnings, h.total(), h.k());

  std::ostringstream text;
  text << render_sample_barchart(h, dataset.labels()) << "\n";
  if (!bounds_only) {
    text << "Predictive distribution of the next unobserved unit:\n";
    const auto star = value_strings(report.fstar);
    const auto tilde = value_strings(report.ftilde);
    const auto hat = value_strings(report.fhat);
    const auto hatp = value_strings(report.fhatprime);
    for (int jj = 0; jj < h.k(); ++jj)
      text << "  " << dataset.labels().name(jj) << ": f* = " << star[jj]
           << ", f~ = " << tilde[jj] << ", f^ = " << hat[jj]
           << ", f^' = " << hatp[jj] << "\n";
  }
  text << certificates_text(j["bounds"]);
  for (const auto& w : text_warnings) text << "warning: " << w << "\n";
  return {std::move(j), text.str(), 0};
}

template <class R>
CommandResult run_population(const RunConfig& config,
                             const SurveyDataset& dataset) {
  if (!config.m) throw ValidationError("--m is required");
  const Histogram h = dataset.histogram();
  if (*config.m < dataset.size())
    throw ValidationError("population size m is smaller than the survey");

  std::optional<ExchangeableModel<R>> model;
  if (config.method == PredictionMethod::exact && h.total() < *config.m)
    model = build_model<R>(config.prior, dataset.labels(), *config.m,
                           config.cap);
  const PopulationPrediction<R> prediction = population_prediction<R>(
      h, *config.m, config.method, model ? &*model : nullptr);

  nlohmann::ordered_json j = base_report(config.command, config.mode);
  fill_sample_fields(j, dataset.labels(), h, config.m);
  nlohmann::ordered_json p;
  p["mode"] = to_string(prediction.method);
  p["values"] = json_distribution(prediction.values);
  p["sample_fraction"] =
      json_number<R>(num<R>::from_ratio(prediction.n, prediction.m));
  p["per_group"] = nlohmann::ordered_json::array();
  j["prediction"] = std::move(p);
  std::vector<std::string> text_warnings;
  add_resolution_warning(j, text_warnings, h.total(), h.k());

  std::ostringstream text;
  text << render_sample_barchart(h, dataset.labels()) << "\n";
  text << render_prediction_barchart(prediction.values.to_doubles(),
                                     value_strings(prediction.values),
                                     dataset.labels(), h.total());
  for (const auto& w : text_warnings) text << "warning: " << w << "\n";
  return {std::move(j), text.str(), 0};
}

template <class R>
CommandResult run_groups(const RunConfig& config,
                         const SurveyDataset& dataset) {
  if (!config.m) throw ValidationError("--m is required");
  if (!dataset.grouped())
    throw ValidationError("groups command needs a survey with a group column");
  if (config.group_sizes.empty())
    throw ValidationError("--group-sizes is required for the groups command");

  const auto histograms = dataset.group_histograms();
  std::vector<std::pair<std::string, std::int64_t>> sizes = config.group_sizes;
  const auto size_of = [&](const std::string& id) {
    for (const auto& [gid, size] : sizes)
      if (gid == id) return size;
    throw ValidationError("no size given for group '" + id + "'");
  };
  for (const auto& [gid, size] : sizes) {
    const bool known = std::any_of(
        histograms.begin(), histograms.end(),
        [&](const auto& pair) { return pair.first == gid; });
    if (!known)
      throw ValidationError("group '" + gid + "' does not occur in the survey");
  }

  // per-group models are built against the group size, not the population
  std::vector<ExchangeableModel<R>> models;
  std::vector<GroupSample<R>> samples;
  if (config.method == PredictionMethod::exact) {
    if (config.prior.kind == PriorSpec::Kind::atoms && histograms.size() > 1)
      throw ValidationError(
          "an atoms prior fixes one population size and cannot be applied "
          "per group; use uniform or iid priors with groups");
    models.reserve(histograms.size());
    for (const auto& [gid, gh] : histograms) {
      const std::int64_t mg = size_of(gid);
      if (gh.total() < mg)
        models.push_back(
            build_model<R>(config.prior, dataset.labels(), mg, config.cap));
      else  // census group: model never consulted
        models.push_back(ExchangeableModel<R>(
            dataset.labels(),
            SimplexWeights<R>::from_atoms(
                mg, dataset.labels().size(),
                {{gh, num<R>::one()}}, false)));
    }
  }
  for (std::size_t i = 0; i < histograms.size(); ++i) {
    const auto& [gid, gh] = histograms[i];
    samples.push_back(GroupSample<R>{
        gid, size_of(gid), gh,
        config.method == PredictionMethod::exact ? &models[i] : nullptr});
  }

  const PopulationPrediction<R> prediction =
      grouped_prediction(samples, config.method, config.m);

  const Histogram h = dataset.histogram();
  nlohmann::ordered_json j = base_report(config.command, config.mode);
  fill_sample_fields(j, dataset.labels(), h, config.m);
  nlohmann::ordered_json p;
  p["mode"] = to_string(prediction.method);
  p["values"] = json_distribution(prediction.values);
  p["sample_fraction"] =
      json_number<R>(num<R>::from_ratio(prediction.n, prediction.m));
  p["per_group"] = nlohmann::ordered_json::array();
  for (const auto& group : prediction.groups) {
    nlohmann::ordered_json g;
    g["id"] = group.id;
    g["size"] = group.size;
    g["sampled"] = group.sampled;
    g["values"] = json_distribution(group.values);
    p["per_group"].push_back(std::move(g));
  }
  j["prediction"] = std::move(p);
  std::vector<std::string> text_warnings;
  for (const auto& group : prediction.groups)
    add_resolution_warning(j, text_warnings, group.sampled, h.k(),
                           "group " + group.id + ": ");

  std::ostringstream text;
  text << render_sample_barchart(h, dataset.labels()) << "\n";
  text << render_prediction_barchart(prediction.values.to_doubles(),
                                     value_strings(prediction.values),
                                     dataset.labels(), h.total());
  for (const auto& group : prediction.groups) {
    text << "\ngroup " << group.id << " (size " << group.size << ", sampled "
         << group.sampled << "):\n";
    const auto values = value_strings(group.values);
    for (int jj = 0; jj < h.k(); ++jj)
      text << "  " << dataset.labels().name(jj) << ": " << values[jj] << "\n";
  }
  for (const auto& w : text_warnings) text << "warning: " << w << "\n";
  return {std::move(j), text.str(), 0};
}

template <class R>
CommandResult run_merge_demo(const RunConfig& config,
                             const SurveyDataset& dataset) {
  if (!config.merge_targets)
    throw ValidationError("--merge is required for merge-demo");
  if (static_cast<int>(config.merge_targets->size()) !=
      dataset.labels().size())
    throw ValidationError("--merge needs one target per label");
  const LabelMerge merge = merge_from_targets(*config.merge_targets);
  const Histogram h = dataset.histogram();

  std::optional<ExchangeableModel<R>> model;
  if (config.m) {
    if (*config.m < dataset.size())
      throw ValidationError("population size m is smaller than the survey");
    if (h.total() < *config.m)
      model = build_model<R>(config.prior, dataset.labels(), *config.m,
                             config.cap);
  }
  const RouteComparison<R> routes =
      route_comparison<R>(h, merge, model ? &*model : nullptr);

  const std::vector<std::string> merged_names =
      detail::merged_label_names(dataset.labels(), merge);

  nlohmann::ordered_json j = base_report(config.command, config.mode);
  fill_sample_fields(j, dataset.labels(), h, config.m);
  nlohmann::ordered_json p;
  p["merged_labels"] = merged_names;
  p["predict_then_sum"] = json_distribution(routes.ht_predict_then_sum);
  p["merge_then_predict"] = json_distribution(routes.ht_merge_then_predict);
  p["tv"] = json_real(routes.tv);
  if (routes.exact) {
    nlohmann::ordered_json e;
    e["predict_then_sum"] = json_distribution(routes.exact->predict_then_sum);
    e["merge_then_predict"] =
        json_distribution(routes.exact->merge_then_predict);
    e["equal"] = routes.exact->equal;
    p["exact"] = std::move(e);
  } else {
    p["exact"] = nullptr;
  }
  j["prediction"] = std::move(p);

  std::ostringstream text;
  text << render_sample_barchart(h, dataset.labels()) << "\n";
  text << "Smoothed prediction for the merged labels (two routes):\n";
  const auto sum_values = value_strings(routes.ht_predict_then_sum);
  const auto merged_values = value_strings(routes.ht_merge_then_predict);
  for (int jj = 0; jj < merge.target_k(); ++jj)
    text << "  " << merged_names[static_cast<std::size_t>(jj)]
         << ": predict-then-sum = " << sum_values[jj]
         << ", merge-then-predict = " << merged_values[jj] << "\n";
  text << "TV distance between routes: " << plain(j["prediction"]["tv"])
       << "\n";
  if (routes.exact)
    text << "exact routes coincide: "
         << (routes.exact->equal ? "yes" : "NO") << "\n";
  return {std::move(j), text.str(), 0};
}

template <class R>
CommandResult run_simulate(const RunConfig& config, const LabelSet& labels) {
  if (!config.m) throw ValidationError("--m is required");
  if (!config.draws) throw ValidationError("--draws is required for simulate");
  if (*config.draws < 0 || *config.draws > *config.m)
    throw ValidationError("--draws must satisfy 0 <= draws <= m");
  const ExchangeableModel<R> model =
      build_model<R>(config.prior, labels, *config.m, config.cap);
  const std::vector<int> sequence =
      sample_sequence(model, *config.draws, config.seed);
  const Histogram h = histogram_of(sequence, labels.size());

  nlohmann::ordered_json j = base_report(config.command, config.mode);
  fill_sample_fields(j, labels, h, config.m);
  nlohmann::ordered_json p;
  p["seed"] = config.seed;
  p["sequence"] = nlohmann::ordered_json::array();
  for (int x : sequence) p["sequence"].push_back(labels.name(x));
  j["prediction"] = std::move(p);

  std::ostringstream text;
  text << "seed " << config.seed << " ->";
  for (int x : sequence) text << " " << labels.name(x);
  text << "\n\n" << render_sample_barchart(h, labels);
  return {std::move(j), text.str(), 0};
}

inline CommandResult run_verify(const RunConfig& config) {
  std::vector<SuiteReport> reports;
  if (config.manifest_path) {
    const nlohmann::json manifest =
        nlohmann::json::parse(cli_detail::read_file(*config.manifest_path));
    if (!manifest.is_array())
      throw ValidationError("manifest must be a JSON array");
    for (const auto& entry : manifest) {
      reports.push_back(run_suite(
          entry.at("suite").get<std::string>(),
          entry.at("seed").get<std::uint64_t>(),
          entry.at("m").get<std::int64_t>(), entry.at("k").get<int>(),
          entry.value("cases", config.cases)));
    }
  } else {
    const std::int64_t m = config.verify_m.value_or(4);
    const int k = config.verify_k.value_or(3);
    if (config.suite == "all") {
      for (const std::string& name : suite_names())
        reports.push_back(run_suite(name, config.seed, m, k, config.cases));
    } else {
      reports.push_back(
          run_suite(config.suite, config.seed, m, k, config.cases));
    }
  }

  bool all_passed = true;
  nlohmann::ordered_json j = base_report(config.command, config.mode);
  nlohmann::ordered_json p;
  p["suites"] = nlohmann::ordered_json::array();
  std::ostringstream text;
  for (const SuiteReport& report : reports) {
    all_passed = all_passed && report.passed();
    nlohmann::ordered_json s;
    s["suite"] = report.suite;
    s["seed"] = report.seed;
    s["m"] = report.m;
    s["k"] = report.k;
    s["cases"] = report.cases;
    s["failures"] = report.failures;
    s["messages"] = report.messages;
    p["suites"].push_back(std::move(s));
    text << "suite " << report.suite << " (seed " << report.seed << ", m "
         << report.m << ", k " << report.k << "): "
         << (report.cases - report.failures) << "/" << report.cases
         << " cases passed\n";
    for (const std::string& msg : report.messages) text << "  " << msg << "\n";
  }
  p["all_passed"] = all_passed;
  j["prediction"] = std::move(p);
  return {std::move(j), text.str(), all_passed ? 0 : 1};
}

template <class R>
CommandResult run_typed(const RunConfig& config, const SurveyDataset* dataset) {
  const auto need_dataset = [&]() -> const SurveyDataset& {
    if (dataset == nullptr)
      throw ValidationError("command '" + config.command +
                            "' needs --input with a survey CSV");
    return *dataset;
  };
  if (config.command == "predict")
    return run_predict<R>(config, need_dataset(), false);
  if (config.command == "beta")
    return run_predict<R>(config, need_dataset(), true);
  if (config.command == "population")
    return run_population<R>(config, need_dataset());
  if (config.command == "groups") return run_groups<R>(config, need_dataset());
  if (config.command == "merge-demo")
    return run_merge_demo<R>(config, need_dataset());
  if (config.command == "simulate") {
    if (dataset != nullptr) return run_simulate<R>(config, dataset->labels());
    if (config.k) return run_simulate<R>(config, LabelSet::numbered(*config.k));
    throw ValidationError("simulate needs --input, --labels or --k");
  }
  throw ValidationError("unknown command '" + config.command + "'");
}

}  // namespace cli_detail

// Dispatch a parsed command.  Throws ValidationError / ZeroProbabilityError
// for the caller to map onto exit codes 2 / 3.
inline CommandResult run_command(const RunConfig& config,
                                 const SurveyDataset* dataset = nullptr) {
  if (config.command == "verify") return cli_detail::run_verify(config);
  if (config.mode == NumericMode::rational)
    return cli_detail::run_typed<Rational>(config, dataset);
  return cli_detail::run_typed<LogReal>(config, dataset);
}

}  // namespace finexch
