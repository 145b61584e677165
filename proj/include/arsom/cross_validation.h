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

#ifndef ARSOM_CROSS_VALIDATION_H_
#define ARSOM_CROSS_VALIDATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arsom/classifier.h"
#include "arsom/dataset.h"
#include "arsom/rule_mining.h"
#include "arsom/rule_selection.h"

namespace arsom {

struct CvOptions {
  std::int64_t node_budget = kDefaultNodeBudget;
  double operating_threshold = kDefaultOperatingThreshold;
  // Folds run on this many threads; results do not depend on it.
  int workers = 1;
  // Record wall-clock time per fold. Off by default since it makes reports
  // differ between otherwise identical runs.
  bool record_runtime = false;
};

struct FoldRecord {
  int repeat = 0;
  int fold = 0;
  int train_rows = 0;
  int test_rows = 0;
  bool ok = false;
  std::string failure;  // set when !ok
  double auc = 0.0;
  int rule_count = 0;
  int feature_count = 0;
  ProofStatus proof = ProofStatus::kGreedyHeuristic;
  std::optional<double> gap;
  std::int64_t solver_nodes = 0;
  std::optional<double> runtime_ms;
  // Selected antecedents, as feature names.
  std::vector<std::vector<std::string>> rules;
  std::vector<RocPoint> roc_points;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single value
};

MeanStd Summarize(const std::vector<double>& values);

struct CvReport {
  MiningConfig mining;
  SelectionWeights weights;
  int repeats = 0;
  int folds = 0;
  std::uint64_t seed = 0;
  std::int64_t node_budget = 0;
  double operating_threshold = 0.0;
  std::vector<std::string> dropped_features;

  std::vector<FoldRecord> records;  // repeat-major
  int completed = 0;
  int failed = 0;
  MeanStd auc;
  MeanStd rule_count;
  MeanStd feature_count;
};

// Trains on the plan's training rows and evaluates on its test rows, once
// per (repeat, fold). Each side is copied into its own dataset first. Folds
// whose training side yields no candidates, or whose test side holds a
// single class, are recorded as failed and left out of the aggregates.
// Throws Error(kEmptyCandidates) if every fold fails.
CvReport RunCv(const BinaryDataset& ds, const MiningConfig& cfg,
               const SelectionWeights& weights, const FoldPlan& plan,
               const CvOptions& options = {});

// One fold of RunCv, exposed for inspection.
FoldRecord RunFold(const BinaryDataset& ds, const MiningConfig& cfg,
                   const SelectionWeights& weights, const FoldSplit& split,
                   const CvOptions& options = {});

}  // namespace arsom

#endif  // ARSOM_CROSS_VALIDATION_H_
