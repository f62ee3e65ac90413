#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "finexch/combinat.hpp"
#include "finexch/errors.hpp"

namespace finexch {

// One respondent per row, with an optional group id.
struct SurveyRow {
  int label = 0;  // 0-based index into the label set
  std::optional<std::string> group;
};

class SurveyDataset {
 public:
  SurveyDataset(LabelSet labels, std::vector<SurveyRow> rows)
      : labels_(std::move(labels)), rows_(std::move(rows)) {
    for (const SurveyRow& row : rows_)
      if (row.label < 0 || row.label >= labels_.size())
        throw ValidationError("row label index out of range");
  }

  const LabelSet& labels() const { return labels_; }
  const std::vector<SurveyRow>& rows() const { return rows_; }
  std::int64_t size() const { return static_cast<std::int64_t>(rows_.size()); }
  bool grouped() const {
    return std::any_of(rows_.begin(), rows_.end(),
                       [](const SurveyRow& r) { return r.group.has_value(); });
  }

  Histogram histogram() const {
    std::vector<std::int64_t> counts(
        static_cast<std::size_t>(labels_.size()), 0);
    for (const SurveyRow& row : rows_)
      ++counts[static_cast<std::size_t>(row.label)];
    return Histogram(std::move(counts));
  }

  // Group ids in order of first appearance, with their histograms.
  std::vector<std::pair<std::string, Histogram>> group_histograms() const {
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::int64_t>> counts;
    for (const SurveyRow& row : rows_) {
      if (!row.group) throw ValidationError("row without a group id");
      auto [it, inserted] = counts.try_emplace(
          *row.group,
          std::vector<std::int64_t>(static_cast<std::size_t>(labels_.size()),
                                    0));
      if (inserted) order.push_back(*row.group);
      ++it->second[static_cast<std::size_t>(row.label)];
    }
    std::vector<std::pair<std::string, Histogram>> result;
    result.reserve(order.size());
    for (const std::string& id : order)
      result.emplace_back(id, Histogram(counts.at(id)));
    return result;
  }

 private:
  LabelSet labels_;
  std::vector<SurveyRow> rows_;
};

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line,
                                               std::size_t line_number) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"' && current.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted)
    throw ValidationError("line " + std::to_string(line_number) +
                          ": unterminated quote");
  fields.push_back(std::move(current));
  return fields;
}

inline std::vector<std::pair<std::string, std::size_t>> csv_lines(
    std::string_view content) {
  std::vector<std::pair<std::string, std::size_t>> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string line(content.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++number;
    lines.emplace_back(std::move(line), number);
    if (end == content.size()) break;
    start = end + 1;
  }
  while (!lines.empty() && lines.back().first.empty()) lines.pop_back();
  return lines;
}

}  // namespace detail

// CSV with header `label` or `label,group`, one respondent per row.  When no
// explicit label list is given, the label set is the distinct observed
// labels sorted lexicographically.
inline SurveyDataset parse_survey(
    std::string_view csv_content,
    const std::optional<std::vector<std::string>>& explicit_labels =
        std::nullopt) {
  auto lines = detail::csv_lines(csv_content);
  if (lines.empty()) throw ValidationError("empty survey");

  const auto header =
      detail::split_csv_line(lines.front().first, lines.front().second);
  if (header.empty() || header[0] != "label")
    throw ValidationError("first CSV column must be 'label'");
  bool has_group = false;
  if (header.size() == 2) {
    if (header[1] == "label")
      throw ValidationError("duplicate header column 'label'");
    if (header[1] != "group")
      throw ValidationError("second CSV column must be 'group'");
    has_group = true;
  } else if (header.size() > 2) {
    throw ValidationError("survey CSV supports only 'label' and 'group'");
  }

  struct RawRow {
    std::string label;
    std::optional<std::string> group;
    std::size_t line;
  };
  std::vector<RawRow> raw;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [text, number] = lines[i];
    if (text.empty()) continue;  // stray blank lines are ignored
    auto fields = detail::split_csv_line(text, number);
    if (fields.size() != header.size())
      throw ValidationError("line " + std::to_string(number) + ": expected " +
                            std::to_string(header.size()) + " fields, found " +
                            std::to_string(fields.size()));
    if (fields[0].empty())
      throw ValidationError("line " + std::to_string(number) +
                            ": empty label");
    RawRow row{std::move(fields[0]), std::nullopt, number};
    if (has_group) {
      if (fields[1].empty())
        throw ValidationError("line " + std::to_string(number) +
                              ": empty group id");
      row.group = std::move(fields[1]);
    }
    raw.push_back(std::move(row));
  }
  if (raw.empty()) throw ValidationError("empty survey");

  LabelSet labels = [&] {
    if (explicit_labels) return LabelSet(*explicit_labels);
    std::set<std::string> distinct;
    for (const RawRow& row : raw) distinct.insert(row.label);
    return LabelSet(std::vector<std::string>(distinct.begin(), distinct.end()));
  }();

  std::vector<SurveyRow> rows;
  rows.reserve(raw.size());
  for (RawRow& row : raw) {
    const int index = labels.index_of(row.label);
    if (index < 0)
      throw ValidationError("line " + std::to_string(row.line) +
                            ": unknown label '" + row.label + "'");
    rows.push_back(SurveyRow{index, std::move(row.group)});
  }
  return SurveyDataset(std::move(labels), std::move(rows));
}

// Label list file: one label per line, order defines indices.
inline std::vector<std::string> parse_label_list(std::string_view content) {
  std::vector<std::string> labels;
  for (const auto& [line, number] : detail::csv_lines(content)) {
    if (line.empty()) continue;
    labels.push_back(line);
  }
  if (labels.empty()) throw ValidationError("label list file is empty");
  return labels;
}

}  // namespace finexch
