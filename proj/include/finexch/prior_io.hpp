#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "finexch/combinat.hpp"
#include "finexch/errors.hpp"
#include "finexch/model.hpp"
#include "finexch/rational.hpp"

namespace finexch {

// Prior atoms file:
//   {"m": int, "k": int, "labels": [str], "atoms":
//    [{"histogram": [int], "weight": number-or-"p/q"}], "renormalize": bool}
// In rational mode weights parse exactly from their decimal or "p/q" form;
// use strings for fractions a decimal cannot express ("1/3").
struct PriorAtomsFile {
  std::int64_t m = 0;
  int k = 0;
  std::vector<std::string> labels;  // may be empty
  struct RawAtom {
    std::vector<std::int64_t> histogram;
    std::string weight;  // textual form, parsed per numeric mode
  };
  std::vector<RawAtom> atoms;
  bool renormalize = false;
};

inline PriorAtomsFile parse_prior_atoms(const nlohmann::json& j) {
  PriorAtomsFile file;
  try {
    file.m = j.at("m").get<std::int64_t>();
    file.k = j.at("k").get<int>();
    if (j.contains("labels"))
      file.labels = j.at("labels").get<std::vector<std::string>>();
    file.renormalize = j.value("renormalize", false);
    for (const auto& atom : j.at("atoms")) {
      PriorAtomsFile::RawAtom raw;
      raw.histogram = atom.at("histogram").get<std::vector<std::int64_t>>();
      const auto& w = atom.at("weight");
      if (w.is_string()) {
        raw.weight = w.get<std::string>();
      } else if (w.is_number()) {
        raw.weight = w.dump();
      } else {
        throw ValidationError("atom weight must be a number or string");
      }
      file.atoms.push_back(std::move(raw));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed prior atoms file: ") +
                          e.what());
  }
  if (file.atoms.empty())
    throw ValidationError("prior atoms file has no atoms");
  if (!file.labels.empty() &&
      static_cast<int>(file.labels.size()) != file.k)
    throw ValidationError("prior atoms file: labels length does not match k");
  return file;
}

template <class R>
R parse_weight(const std::string& text) {
  const Rational q = parse_rational(text);
  if (sgn(q) < 0) throw ValidationError("atom weights must be nonnegative");
  if constexpr (num<R>::exact)
    return q;
  else
    return LogReal::from_double(q.get_d());
}

template <class R>
SimplexWeights<R> instantiate_prior_atoms(const PriorAtomsFile& file) {
  std::vector<typename SimplexWeights<R>::Atom> atoms;
  atoms.reserve(file.atoms.size());
  for (const auto& raw : file.atoms)
    atoms.push_back(
        {Histogram(raw.histogram), parse_weight<R>(raw.weight)});
  return SimplexWeights<R>::from_atoms(file.m, file.k, std::move(atoms),
                                       file.renormalize);
}

inline nlohmann::ordered_json prior_atoms_to_json(
    const SimplexWeights<Rational>& weights,
    const std::vector<std::string>& labels) {
  nlohmann::ordered_json j;
  j["m"] = weights.m();
  j["k"] = weights.k();
  j["labels"] = labels;
  j["atoms"] = nlohmann::ordered_json::array();
  for (const auto& atom : weights.atoms()) {
    nlohmann::ordered_json a;
    a["histogram"] = atom.histogram.counts();
    a["weight"] = to_fraction_string(atom.weight);
    j["atoms"].push_back(std::move(a));
  }
  j["renormalize"] = false;
  return j;
}

}  // namespace finexch
