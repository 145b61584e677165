// Copyright 2026 The ARSOM Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arsom/dataset.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "arsom/error.h"

namespace arsom {

namespace {

// RFC 4180 field splitting: double quotes delimit fields that may contain
// commas, and "" inside a quoted field is a literal quote.
std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          field.push_back('"');
          ++k;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::string QuoteIfNeeded(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

bool ReadLine(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

// Uniform integer in [0, bound) from raw 64-bit draws. Rejection keeps the
// result unbiased and, unlike std::uniform_int_distribution, the sequence is
// the same on every standard library.
std::uint64_t BoundedDraw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

void Shuffle(std::vector<int>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = BoundedDraw(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace

BinaryDataset::BinaryDataset(std::vector<std::string> feature_names,
                             const std::vector<std::vector<std::uint8_t>>& rows,
                             std::vector<bool> labels, CsvLayout layout)
    : feature_names_(std::move(feature_names)),
      labels_(std::move(labels)),
      layout_(std::move(layout)) {
  const int m = num_features();
  const int n = static_cast<int>(rows.size());
  if (m < 1) throw DataError("dataset has no feature columns");
  if (n < 1) throw DataError("dataset has no rows");
  if (static_cast<int>(labels_.size()) != n) {
    throw DataError("label count " + std::to_string(labels_.size()) +
                    " does not match row count " + std::to_string(n));
  }
  std::set<std::string> seen;
  for (const auto& name : feature_names_) {
    if (name.empty()) throw DataError("empty feature name");
    if (!seen.insert(name).second) {
      throw DataError("duplicate feature name '" + name + "'");
    }
  }
  columns_.assign(m, Bitset(n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != m) {
      throw DataError("row " + std::to_string(i) + " has " +
                      std::to_string(rows[i].size()) + " cells, expected " +
                      std::to_string(m));
    }
    for (int j = 0; j < m; ++j) {
      const std::uint8_t v = rows[i][j];
      if (v > 1) {
        throw DataError("row " + std::to_string(i) + " column '" +
                        feature_names_[j] + "': value " + std::to_string(v) +
                        " is not 0 or 1");
      }
      if (v == 1) columns_[j].set(i);
    }
  }
  BuildMasks();
}

void BinaryDataset::BuildMasks() {
  const int n = num_rows();
  positive_mask_ = Bitset(n);
  for (int i = 0; i < n; ++i) {
    if (labels_[i]) positive_mask_.set(i);
  }
  negative_mask_ = ~positive_mask_;
}

std::optional<int> BinaryDataset::FindFeature(const std::string& name) const {
  const auto it = std::find(feature_names_.begin(), feature_names_.end(), name);
  if (it == feature_names_.end()) return std::nullopt;
  return static_cast<int>(it - feature_names_.begin());
}

std::vector<std::uint8_t> BinaryDataset::row(int i) const {
  std::vector<std::uint8_t> out(num_features());
  for (int j = 0; j < num_features(); ++j) out[j] = columns_[j][i] ? 1 : 0;
  return out;
}

BinaryDataset BinaryDataset::SubsetRows(std::span<const int> rows) const {
  if (rows.empty()) throw DataError("row subset is empty");
  BinaryDataset out;
  out.feature_names_ = feature_names_;
  out.layout_ = layout_;
  const int n = static_cast<int>(rows.size());
  out.columns_.assign(num_features(), Bitset(n));
  out.labels_.resize(n);
  for (int k = 0; k < n; ++k) {
    const int i = rows[k];
    if (i < 0 || i >= num_rows()) {
      throw DataError("row index " + std::to_string(i) + " out of range");
    }
    out.labels_[k] = labels_[i];
    for (int j = 0; j < num_features(); ++j) {
      if (columns_[j][i]) out.columns_[j].set(k);
    }
  }
  out.BuildMasks();
  return out;
}

BinaryDataset BinaryDataset::SelectFeatures(std::span<const int> features) const {
  if (features.empty()) throw DataError("feature subset is empty");
  BinaryDataset out;
  out.layout_ = layout_;
  out.labels_ = labels_;
  for (const int j : features) {
    if (j < 0 || j >= num_features()) {
      throw DataError("feature index " + std::to_string(j) + " out of range");
    }
    out.feature_names_.push_back(feature_names_[j]);
    out.columns_.push_back(columns_[j]);
  }
  out.BuildMasks();
  return out;
}

BinaryDataset BinaryDataset::WithLabels(std::vector<bool> labels) const {
  if (labels.size() != labels_.size()) {
    throw DataError("label count does not match row count");
  }
  BinaryDataset out = *this;
  out.labels_ = std::move(labels);
  out.BuildMasks();
  return out;
}

BinaryDataset ParseCsv(std::istream& in, const std::string& label_column,
                       const std::string& positive_label,
                       const std::string& source_name) {
  std::string line;
  if (!ReadLine(in, line)) throw DataError(source_name + ": empty file");
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  std::vector<std::string> header = SplitCsvLine(line);
  for (auto& h : header) h = Trim(h);

  int label_pos = -1;
  for (int k = 0; k < static_cast<int>(header.size()); ++k) {
    if (header[k] == label_column) {
      if (label_pos >= 0) {
        throw DataError(source_name + ": label column '" + label_column +
                        "' appears twice");
      }
      label_pos = k;
    }
  }
  if (label_pos < 0) {
    throw DataError(source_name + ": label column '" + label_column +
                    "' not found in header");
  }
  std::vector<std::string> features;
  for (int k = 0; k < static_cast<int>(header.size()); ++k) {
    if (k != label_pos) features.push_back(header[k]);
  }

  std::vector<std::vector<std::uint8_t>> rows;
  std::vector<std::string> raw_labels;
  int line_no = 1;
  while (ReadLine(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != header.size()) {
      throw DataError(source_name + ": line " + std::to_string(line_no) +
                      " has " + std::to_string(cells.size()) +
                      " fields, header has " + std::to_string(header.size()));
    }
    std::vector<std::uint8_t> row;
    row.reserve(features.size());
    for (int k = 0; k < static_cast<int>(cells.size()); ++k) {
      const std::string cell = Trim(cells[k]);
      if (k == label_pos) {
        raw_labels.push_back(cell);
        continue;
      }
      if (cell == "0") {
        row.push_back(0);
      } else if (cell == "1") {
        row.push_back(1);
      } else {
        throw DataError(source_name + ": malformed cell at line " +
                        std::to_string(line_no) + ", column '" + header[k] +
                        "': '" + cell + "' is not 0 or 1");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(source_name + ": no data rows");

  std::set<std::string> distinct(raw_labels.begin(), raw_labels.end());
  if (!distinct.count(positive_label)) {
    throw DataError(source_name + ": positive label '" + positive_label +
                    "' does not occur in column '" + label_column + "'");
  }
  if (distinct.size() > 2) {
    throw DataError(source_name + ": label column '" + label_column +
                    "' has " + std::to_string(distinct.size()) +
                    " distinct values; binary labels required");
  }
  CsvLayout layout;
  layout.label_column = label_column;
  layout.label_position = label_pos;
  layout.positive_label = positive_label;
  layout.negative_label = "";
  for (const auto& v : distinct) {
    if (v != positive_label) layout.negative_label = v;
  }
  std::vector<bool> labels(raw_labels.size());
  for (std::size_t i = 0; i < raw_labels.size(); ++i) {
    labels[i] = raw_labels[i] == positive_label;
  }
  return BinaryDataset(std::move(features), rows, std::move(labels),
                       std::move(layout));
}

BinaryDataset LoadCsv(const std::string& path, const std::string& label_column,
                      const std::string& positive_label) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file '" + path + "'");
  return ParseCsv(in, label_column, positive_label, path);
}

void WriteCsv(const BinaryDataset& ds, std::ostream& out) {
  const CsvLayout& layout = ds.layout();
  const int m = ds.num_features();
  const int label_at = layout.label_position < 0 || layout.label_position > m
                           ? m
                           : layout.label_position;
  auto emit_row = [&](auto&& feature_cell, const std::string& label) {
    int j = 0;
    for (int k = 0; k <= m; ++k) {
      if (k > 0) out << ',';
      if (k == label_at) {
        out << QuoteIfNeeded(label);
      } else {
        out << feature_cell(j++);
      }
    }
    out << '\n';
  };
  emit_row([&](int j) { return QuoteIfNeeded(ds.feature_name(j)); },
           layout.label_column);
  for (int i = 0; i < ds.num_rows(); ++i) {
    emit_row([&](int j) { return ds.cell(i, j) ? "1" : "0"; },
             ds.is_positive(i) ? layout.positive_label : layout.negative_label);
  }
}

std::pair<BinaryDataset, std::vector<std::string>> DropConstantFeatures(
    const BinaryDataset& ds) {
  std::vector<int> keep;
  std::vector<std::string> dropped;
  for (int j = 0; j < ds.num_features(); ++j) {
    const auto ones = ds.column(j).count();
    if (ones == 0 || ones == static_cast<std::size_t>(ds.num_rows())) {
      dropped.push_back(ds.feature_name(j));
    } else {
      keep.push_back(j);
    }
  }
  if (keep.empty()) {
    throw DataError("every feature is constant; nothing left to learn from");
  }
  return {ds.SelectFeatures(keep), std::move(dropped)};
}

FoldSplit FoldPlan::Split(int repeat, int fold) const {
  FoldSplit split;
  split.repeat = repeat;
  split.fold = fold;
  const auto& assign = assignments.at(repeat);
  for (int i = 0; i < static_cast<int>(assign.size()); ++i) {
    (assign[i] == fold ? split.test_rows : split.train_rows).push_back(i);
  }
  return split;
}

std::vector<FoldSplit> FoldPlan::Splits() const {
  std::vector<FoldSplit> out;
  out.reserve(static_cast<std::size_t>(repeats) * folds);
  for (int r = 0; r < repeats; ++r) {
    for (int f = 0; f < folds; ++f) out.push_back(Split(r, f));
  }
  return out;
}

FoldPlan MakeFolds(const BinaryDataset& ds, int repeats, int folds,
                   std::uint64_t seed) {
  if (repeats < 1) throw UsageError("repeats must be at least 1");
  if (folds < 2) throw UsageError("folds must be at least 2");
  if (folds > ds.num_rows()) {
    throw UsageError("folds (" + std::to_string(folds) +
                     ") exceeds row count (" + std::to_string(ds.num_rows()) +
                     ")");
  }
  FoldPlan plan;
  plan.repeats = repeats;
  plan.folds = folds;
  plan.seed = seed;
  std::mt19937_64 rng(seed);
  std::vector<int> pos, neg;
  for (int i = 0; i < ds.num_rows(); ++i) {
    (ds.is_positive(i) ? pos : neg).push_back(i);
  }
  for (int r = 0; r < repeats; ++r) {
    std::vector<int> p = pos, q = neg;
    Shuffle(p, rng);
    Shuffle(q, rng);
    std::vector<int> assign(ds.num_rows());
    // Dealing positives then negatives round-robin from one running counter
    // keeps both the class counts and the fold sizes within one of even.
    int next = 0;
    for (const int i : p) assign[i] = next++ % folds;
    for (const int i : q) assign[i] = next++ % folds;
    plan.assignments.push_back(std::move(assign));
  }
  return plan;
}

}  // namespace arsom
