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

#ifndef ARSOM_DATASET_H_
#define ARSOM_DATASET_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace arsom {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

// How a dataset was laid out in its source CSV, kept so that it can be
// written back cell-for-cell.
struct CsvLayout {
  std::string label_column = "label";
  int label_position = -1;  // -1 means "after the last feature"
  std::string positive_label = "1";
  std::string negative_label = "0";
};

// An n x m 0/1 matrix of patients by features with a binary class label per
// patient. Immutable once built. Rows and columns are both kept as packed
// bitsets so antecedent matching is a chain of word-wise ANDs.
class BinaryDataset {
 public:
  // Validates shape, cell values and feature names; throws Error(kData).
  BinaryDataset(std::vector<std::string> feature_names,
                const std::vector<std::vector<std::uint8_t>>& rows,
                std::vector<bool> labels, CsvLayout layout = {});

  int num_rows() const { return static_cast<int>(labels_.size()); }
  int num_features() const { return static_cast<int>(feature_names_.size()); }
  int positive_count() const { return static_cast<int>(positive_mask_.count()); }
  int negative_count() const { return num_rows() - positive_count(); }

  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::string& feature_name(int j) const { return feature_names_[j]; }
  std::optional<int> FindFeature(const std::string& name) const;

  bool is_positive(int i) const { return labels_[i]; }
  const std::vector<bool>& labels() const { return labels_; }
  bool cell(int i, int j) const { return columns_[j][i]; }
  std::vector<std::uint8_t> row(int i) const;

  // Bit i set iff patient i has feature j.
  const Bitset& column(int j) const { return columns_[j]; }
  const Bitset& positive_mask() const { return positive_mask_; }
  const Bitset& negative_mask() const { return negative_mask_; }

  const CsvLayout& layout() const { return layout_; }

  // Physically separate copy holding only `rows`, in the given order.
  BinaryDataset SubsetRows(std::span<const int> rows) const;
  // Physically separate copy holding only `features`, in the given order.
  BinaryDataset SelectFeatures(std::span<const int> features) const;
  BinaryDataset WithLabels(std::vector<bool> labels) const;

 private:
  BinaryDataset() = default;
  void BuildMasks();

  std::vector<std::string> feature_names_;
  std::vector<Bitset> columns_;
  std::vector<bool> labels_;
  Bitset positive_mask_;
  Bitset negative_mask_;
  CsvLayout layout_;
};

// Reads a header-first, comma-separated file. Every column except
// `label_column` must hold 0 or 1. Rows whose label equals `positive_label`
// are positive; the label column may hold at most one other value.
BinaryDataset LoadCsv(const std::string& path, const std::string& label_column,
                      const std::string& positive_label);
BinaryDataset ParseCsv(std::istream& in, const std::string& label_column,
                       const std::string& positive_label,
                       const std::string& source_name = "<stream>");
void WriteCsv(const BinaryDataset& ds, std::ostream& out);

// Removes all-0 and all-1 columns. Dropped names come back in original order.
std::pair<BinaryDataset, std::vector<std::string>> DropConstantFeatures(
    const BinaryDataset& ds);

// Identifier of the generator behind fold assignment. Reports carry it so a
// run can be reproduced from its seed.
inline constexpr const char kFoldRngAlgorithm[] =
    "mt19937_64+rejection-bounded-fisher-yates";

struct FoldSplit {
  int repeat = 0;
  int fold = 0;
  std::vector<int> train_rows;
  std::vector<int> test_rows;
};

// Repeated stratified k-fold assignment.
struct FoldPlan {
  int repeats = 0;
  int folds = 0;
  std::uint64_t seed = 0;
  // assignments[r][i] is the test fold of row i in repeat r.
  std::vector<std::vector<int>> assignments;

  int num_rows() const {
    return assignments.empty() ? 0 : static_cast<int>(assignments[0].size());
  }
  FoldSplit Split(int repeat, int fold) const;
  // All repeats x folds splits, repeat-major.
  std::vector<FoldSplit> Splits() const;
};

FoldPlan MakeFolds(const BinaryDataset& ds, int repeats, int folds,
                   std::uint64_t seed);

}  // namespace arsom

#endif  // ARSOM_DATASET_H_
