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

#include "arsom/classifier.h"

#include <algorithm>
#include <ostream>

#include "arsom/error.h"

namespace arsom {

namespace {

bool RowMatches(const Rule& rule, std::span<const std::uint8_t> row) {
  return std::all_of(rule.antecedent.begin(), rule.antecedent.end(),
                     [&](int j) { return row[j] == 1; });
}

// Mean of the values after sorting them, so the result does not depend on
// the order the covering rules were listed in.
double SortedMean(std::vector<double>& values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

Confusion Count(std::span<const double> scores, const std::vector<bool>& labels,
                double threshold) {
  Confusion c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] > threshold;
    if (labels[i]) {
      ++(predicted ? c.tp : c.fn);
    } else {
      ++(predicted ? c.fp : c.tn);
    }
  }
  return c;
}

RocPoint MakePoint(double threshold, const Confusion& c) {
  RocPoint p;
  p.threshold = threshold;
  p.confusion = c;
  p.sensitivity = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  p.specificity = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
  return p;
}

}  // namespace

RuleModel::RuleModel(std::vector<std::string> feature_names, std::vector<Rule> rules)
    : feature_names_(std::move(feature_names)), rules_(std::move(rules)) {
  if (rules_.empty()) throw UsageError("rule model needs at least one rule");
  for (const Rule& r : rules_) {
    if (!(r.confidence >= 0.0 && r.confidence <= 1.0)) {
      throw UsageError("rule confidence outside [0, 1]");
    }
    if (r.antecedent.empty()) throw UsageError("rule with empty antecedent");
    for (const int j : r.antecedent) {
      if (j < 0 || j >= static_cast<int>(feature_names_.size())) {
        throw UsageError("rule feature index " + std::to_string(j) + " out of range");
      }
    }
  }
}

RuleModel RuleModel::Rebind(const std::vector<std::string>& feature_names) const {
  std::vector<Rule> rebound = rules_;
  for (Rule& r : rebound) {
    for (int& j : r.antecedent) {
      const auto it =
          std::find(feature_names.begin(), feature_names.end(), feature_names_[j]);
      if (it == feature_names.end()) {
        throw DataError("model feature '" + feature_names_[j] +
                        "' is missing from the data");
      }
      j = static_cast<int>(it - feature_names.begin());
    }
    std::sort(r.antecedent.begin(), r.antecedent.end());
  }
  return RuleModel(feature_names, std::move(rebound));
}

double Score(const RuleModel& model, std::span<const std::uint8_t> patient_row) {
  if (patient_row.size() != model.feature_names().size()) {
    throw DataError("patient row has " + std::to_string(patient_row.size()) +
                    " features, model expects " +
                    std::to_string(model.feature_names().size()));
  }
  std::vector<double> confidences;
  for (const Rule& r : model.rules()) {
    if (RowMatches(r, patient_row)) confidences.push_back(r.confidence);
  }
  return SortedMean(confidences);
}

Prediction Classify(const RuleModel& model, std::span<const std::uint8_t> patient_row,
                    double theta_p) {
  return Score(model, patient_row) > theta_p ? Prediction::kPositive
                                             : Prediction::kNegative;
}

std::vector<double> ScoreAll(const RuleModel& model, const BinaryDataset& ds) {
  if (static_cast<int>(model.feature_names().size()) != ds.num_features()) {
    throw DataError("model and data disagree on the number of features");
  }
  std::vector<double> scores(ds.num_rows());
  for (int i = 0; i < ds.num_rows(); ++i) {
    const std::vector<std::uint8_t> row = ds.row(i);
    scores[i] = Score(model, row);
  }
  return scores;
}

RocReport RocFromScores(std::span<const double> scores, const std::vector<bool>& labels,
                        double operating_threshold) {
  if (scores.size() != labels.size()) {
    throw UsageError("score and label counts differ");
  }
  const auto n_pos = std::count(labels.begin(), labels.end(), true);
  if (n_pos == 0 || n_pos == static_cast<std::ptrdiff_t>(labels.size())) {
    throw DataError("ROC needs both classes in the evaluation set");
  }
  std::vector<double> thresholds(scores.begin(), scores.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  thresholds.insert(thresholds.begin(), thresholds.front() - 1.0);
  thresholds.push_back(thresholds.back() + 1.0);

  RocReport report;
  report.operating_threshold = operating_threshold;
  report.operating = Count(scores, labels, operating_threshold);
  for (const double t : thresholds) {
    report.points.push_back(MakePoint(t, Count(scores, labels, t)));
  }
  // Walk from the highest threshold, i.e. from (0, 0) towards (1, 1). The
  // trapezoids are summed in integer units of 1 / (2 * P * N).
  std::int64_t twice_area = 0;
  for (std::size_t k = report.points.size() - 1; k > 0; --k) {
    const Confusion& hi = report.points[k].confusion;
    const Confusion& lo = report.points[k - 1].confusion;
    twice_area += (lo.fp - hi.fp) * (hi.tp + lo.tp);
  }
  const double n_neg = static_cast<double>(labels.size()) - static_cast<double>(n_pos);
  const double area =
      static_cast<double>(twice_area) / (2.0 * static_cast<double>(n_pos) * n_neg);
  report.auc = area;
  return report;
}

RocReport Roc(const RuleModel& model, const BinaryDataset& ds,
              double operating_threshold) {
  const std::vector<double> scores = ScoreAll(model, ds);
  return RocFromScores(scores, ds.labels(), operating_threshold);
}

void WriteRocCsv(const RocReport& report, std::ostream& out) {
  out << "threshold,sensitivity,false_positive_rate\n";
  const auto old_precision = out.precision(17);
  for (const RocPoint& p : report.points) {
    out << p.threshold << ',' << p.sensitivity << ',' << (1.0 - p.specificity) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace arsom
