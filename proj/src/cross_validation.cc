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

#include "arsom/cross_validation.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "arsom/error.h"

namespace arsom {

MeanStd Summarize(const std::vector<double>& values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (const double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

FoldRecord RunFold(const BinaryDataset& ds, const MiningConfig& cfg,
                   const SelectionWeights& weights, const FoldSplit& split,
                   const CvOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  FoldRecord rec;
  rec.repeat = split.repeat;
  rec.fold = split.fold;
  rec.train_rows = static_cast<int>(split.train_rows.size());
  rec.test_rows = static_cast<int>(split.test_rows.size());
  try {
    const BinaryDataset train = ds.SubsetRows(split.train_rows);
    if (train.positive_count() == 0) {
      throw DataError("training rows contain no positive patient");
    }
    const ArsomResult fitted = RunArsom(train, cfg, weights, options.node_budget);
    rec.rule_count = static_cast<int>(fitted.solution.selected_rules.size());
    rec.feature_count = static_cast<int>(fitted.solution.used_features.size());
    rec.proof = fitted.solution.proof;
    rec.gap = fitted.solution.gap;
    rec.solver_nodes = fitted.solution.nodes;
    for (const Rule& r : fitted.selected) {
      std::vector<std::string> names;
      for (const int j : r.antecedent) names.push_back(train.feature_name(j));
      rec.rules.push_back(std::move(names));
    }
    const BinaryDataset test = ds.SubsetRows(split.test_rows);
    if (fitted.selected.empty()) {
      // Nothing selected: every patient scores 0.
      std::vector<double> zeros(test.num_rows(), 0.0);
      const RocReport roc = RocFromScores(zeros, test.labels(), options.operating_threshold);
      rec.auc = roc.auc;
      rec.roc_points = roc.points;
    } else {
      const RuleModel model(train.feature_names(), fitted.selected);
      const RocReport roc = Roc(model, test, options.operating_threshold);
      rec.auc = roc.auc;
      rec.roc_points = roc.points;
    }
    rec.ok = true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kUsage) throw;
    rec.ok = false;
    rec.failure = e.what();
    rec.auc = 0.0;
    rec.rule_count = 0;
    rec.feature_count = 0;
    rec.rules.clear();
  }
  if (options.record_runtime) {
    rec.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return rec;
}

CvReport RunCv(const BinaryDataset& ds, const MiningConfig& cfg,
               const SelectionWeights& weights, const FoldPlan& plan,
               const CvOptions& options) {
  cfg.Validate();
  weights.Validate();
  if (plan.num_rows() != ds.num_rows()) {
    throw UsageError("fold plan covers " + std::to_string(plan.num_rows()) +
                     " rows but the dataset has " + std::to_string(ds.num_rows()));
  }
  const std::vector<FoldSplit> splits = plan.Splits();
  std::vector<FoldRecord> records(splits.size());
  std::vector<std::exception_ptr> errors(splits.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < splits.size(); k = next++) {
      try {
        records[k] = RunFold(ds, cfg, weights, splits[k], options);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  CvReport report;
  report.mining = cfg;
  report.weights = weights;
  report.repeats = plan.repeats;
  report.folds = plan.folds;
  report.seed = plan.seed;
  report.node_budget = options.node_budget;
  report.operating_threshold = options.operating_threshold;
  std::vector<double> aucs, rules, features;
  for (const FoldRecord& r : records) {
    if (!r.ok) {
      ++report.failed;
      continue;
    }
    ++report.completed;
    aucs.push_back(r.auc);
    rules.push_back(r.rule_count);
    features.push_back(r.feature_count);
  }
  report.records = std::move(records);
  if (report.completed == 0) {
    throw Error(ErrorKind::kEmptyCandidates,
                "every cross-validation fold failed (first: " +
                    report.records.front().failure + ")");
  }
  report.auc = Summarize(aucs);
  report.rule_count = Summarize(rules);
  report.feature_count = Summarize(features);
  return report;
}

}  // namespace arsom
