#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "finexch/combinat.hpp"

namespace finexch {

// Fixed-width text barcharts.  The title and axis-label lines are emitted
// byte-exactly; callers own the contract for those strings.
inline std::string render_barchart(const std::string& title,
                                   const std::string& axis_label,
                                   const std::vector<std::string>& labels,
                                   const std::vector<double>& values,
                                   const std::vector<std::string>& value_text,
                                   int width = 40) {
  std::string out = title + "\n" + axis_label + "\n";
  std::size_t label_width = 1;
  for (const auto& l : labels) label_width = std::max(label_width, l.size());
  const double peak = values.empty()
                          ? 0.0
                          : *std::max_element(values.begin(), values.end());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int bar =
        peak > 0.0
            ? static_cast<int>(values[i] / peak * width + 0.5)
            : 0;
    out += "  " + std::string(label_width - labels[i].size(), ' ') +
           labels[i] + " |" + std::string(static_cast<std::size_t>(bar), '#') +
           std::string(static_cast<std::size_t>(width - bar), ' ') + "| " +
           value_text[i] + "\n";
  }
  return out;
}

inline std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

// The raw-sample chart: counts per label, titled "Survey of size n".
inline std::string render_sample_barchart(const Histogram& h,
                                          const LabelSet& labels) {
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<std::string> text;
  for (int j = 0; j < labels.size(); ++j) {
    names.push_back(labels.name(j));
    values.push_back(static_cast<double>(h.count(j)));
    text.push_back(std::to_string(h.count(j)));
  }
  return render_barchart("Survey of size " + std::to_string(h.total()),
                         "Number", names, values, text);
}

// The population-prediction chart, titled per the presentation rules.
inline std::string render_prediction_barchart(
    const std::vector<double>& proportions,
    const std::vector<std::string>& value_text, const LabelSet& labels,
    std::int64_t n) {
  std::vector<std::string> names;
  for (int j = 0; j < labels.size(); ++j) names.push_back(labels.name(j));
  return render_barchart("Prediction based on a survey of size " +
                             std::to_string(n),
                         "Proportion of the electorate", names, proportions,
                         value_text);
}

}  // namespace finexch
