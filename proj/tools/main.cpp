#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "finexch/cli.hpp"
#include "finexch/finexch.hpp"

namespace {

using finexch::NumericMode;
using finexch::OutputFormat;
using finexch::PredictionMethod;
using finexch::RunConfig;

struct RawOptions {
  std::string input_path;
  std::string labels_path;
  std::string prior = "uniform";
  std::string mode = "rational";
  std::string output = "json";
  std::string method = "ht";
  std::string merge;
  std::string group_sizes;
};

std::vector<int> parse_merge_targets(const std::string& text) {
  std::vector<int> targets;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string part = text.substr(start, comma - start);
    try {
      targets.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw finexch::ValidationError("bad merge target '" + part + "'");
    }
    start = comma + 1;
  }
  return targets;
}

std::vector<std::pair<std::string, std::int64_t>> parse_group_sizes(
    const std::string& text) {
  std::vector<std::pair<std::string, std::int64_t>> sizes;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string part = text.substr(start, comma - start);
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == part.size())
      throw finexch::ValidationError("bad group size '" + part +
                                     "', expected id=size");
    try {
      sizes.emplace_back(part.substr(0, eq),
                         std::stoll(part.substr(eq + 1)));
    } catch (const std::exception&) {
      throw finexch::ValidationError("bad group size '" + part + "'");
    }
    start = comma + 1;
  }
  return sizes;
}

int run(const RunConfig& config, const RawOptions& raw) {
  std::optional<finexch::SurveyDataset> dataset;
  if (!raw.input_path.empty()) {
    std::optional<std::vector<std::string>> labels;
    if (!raw.labels_path.empty())
      labels = finexch::parse_label_list(
          finexch::cli_detail::read_file(raw.labels_path));
    dataset = finexch::parse_survey(
        finexch::cli_detail::read_file(raw.input_path), labels);
  } else if (!raw.labels_path.empty()) {
    // labels without responses: enough for simulate
    dataset = finexch::SurveyDataset(
        finexch::LabelSet(finexch::parse_label_list(
            finexch::cli_detail::read_file(raw.labels_path))),
        {});
  }

  const finexch::CommandResult result =
      finexch::run_command(config, dataset ? &*dataset : nullptr);
  if (config.output == OutputFormat::json)
    std::cout << result.json.dump(2) << "\n";
  else
    std::cout << result.text;
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "finexch: predictive and population inference for finite exchangeable "
      "sequences over finite label sets"};
  app.require_subcommand(1);

  RunConfig config;
  RawOptions raw;
  std::int64_t m_flag = -1;
  std::int64_t draws_flag = -1;
  std::int64_t verify_m_flag = -1;
  int verify_k_flag = -1;
  int k_flag = -1;
  std::string manifest;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", raw.input_path, "survey CSV path");
    cmd->add_option("--labels", raw.labels_path,
                    "label list file, one label per line");
    cmd->add_option("--prior", raw.prior,
                    "uniform | iid:p1,...,pk | atoms:PATH");
    cmd->add_option("--mode", raw.mode, "rational | float");
    cmd->add_option("--output", raw.output, "json | text");
    cmd->add_option("--seed", config.seed, "random seed");
  };

  CLI::App* predict = app.add_subcommand(
      "predict", "exact predictive distribution with certified bounds");
  add_common(predict);
  predict->add_option("--m", m_flag, "population size")->required();

  CLI::App* beta = app.add_subcommand(
      "beta", "spread diagnostics and bound certificates only");
  add_common(beta);
  beta->add_option("--m", m_flag, "population size")->required();

  CLI::App* population = app.add_subcommand(
      "population", "expected population proportions per label");
  add_common(population);
  population->add_option("--m", m_flag, "population size")->required();
  population->add_option("--method", raw.method, "ht | exact");

  CLI::App* groups =
      app.add_subcommand("groups", "stratified population prediction");
  add_common(groups);
  groups->add_option("--m", m_flag, "population size")->required();
  groups->add_option("--method", raw.method, "ht | exact");
  groups->add_option("--group-sizes", raw.group_sizes,
                     "comma-separated id=size pairs covering every group");

  CLI::App* merge_demo = app.add_subcommand(
      "merge-demo", "compare predict-then-sum with merge-then-predict");
  add_common(merge_demo);
  merge_demo->add_option("--m", m_flag, "population size (optional)");
  merge_demo
      ->add_option("--merge", raw.merge,
                   "comma-separated 1-based target per label, e.g. 1,1,2")
      ->required();

  CLI::App* simulate =
      app.add_subcommand("simulate", "draw a sequence from a prior model");
  add_common(simulate);
  simulate->add_option("--m", m_flag, "population size")->required();
  simulate->add_option("--draws", draws_flag, "number of draws")->required();
  simulate->add_option("--k", k_flag, "label count when no labels are given");

  CLI::App* verify =
      app.add_subcommand("verify", "run exact-rational verification suites");
  verify->add_option("--suite", config.suite,
                     "frt | ht | merge | extend | iid | all");
  verify->add_option("--seed", config.seed, "random seed");
  verify->add_option("--cases", config.cases, "cases per suite");
  verify->add_option("--m", verify_m_flag, "population size for random models");
  verify->add_option("--k", verify_k_flag, "label count for random models");
  verify->add_option("--manifest", manifest,
                     "JSON manifest of {seed, m, k, suite} entries");
  verify->add_option("--output", raw.output, "json | text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    if (m_flag >= 0) config.m = m_flag;
    if (draws_flag >= 0) config.draws = draws_flag;
    if (k_flag >= 0) config.k = k_flag;
    if (verify_m_flag >= 0) config.verify_m = verify_m_flag;
    if (verify_k_flag >= 0) config.verify_k = verify_k_flag;
    if (!manifest.empty()) config.manifest_path = manifest;
    if (!raw.merge.empty())
      config.merge_targets = parse_merge_targets(raw.merge);
    if (!raw.group_sizes.empty())
      config.group_sizes = parse_group_sizes(raw.group_sizes);
    config.prior = finexch::PriorSpec::parse(raw.prior);

    if (raw.mode == "rational")
      config.mode = NumericMode::rational;
    else if (raw.mode == "float")
      config.mode = NumericMode::floating;
    else
      throw finexch::ValidationError("--mode must be rational or float");

    if (raw.output == "json")
      config.output = OutputFormat::json;
    else if (raw.output == "text")
      config.output = OutputFormat::text;
    else
      throw finexch::ValidationError("--output must be json or text");

    if (raw.method == "ht")
      config.method = PredictionMethod::ht_approx;
    else if (raw.method == "exact")
      config.method = PredictionMethod::exact;
    else
      throw finexch::ValidationError("--method must be ht or exact");

    return run(config, raw);
  } catch (const finexch::ZeroProbabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const finexch::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const finexch::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
