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

#ifndef ARSOM_CLASSIFIER_H_
#define ARSOM_CLASSIFIER_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "arsom/dataset.h"
#include "arsom/rule_mining.h"

namespace arsom {

// A selected rule set used as a scorer. A patient's score is the mean
// confidence of the rules covering it, or 0 when none does.
class RuleModel {
 public:
  // Throws Error(kUsage) on an empty rule list, a confidence outside [0, 1]
  // or an antecedent index outside `feature_names`.
  RuleModel(std::vector<std::string> feature_names, std::vector<Rule> rules);

  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<Rule>& rules() const { return rules_; }

  // Same rules re-indexed against another feature ordering, matched by
  // name. Throws Error(kData) if a rule feature is missing there.
  RuleModel Rebind(const std::vector<std::string>& feature_names) const;

 private:
  std::vector<std::string> feature_names_;
  std::vector<Rule> rules_;
};

enum class Prediction { kNegative, kPositive };

double Score(const RuleModel& model, std::span<const std::uint8_t> patient_row);
// Positive iff Score(...) > theta_p.
Prediction Classify(const RuleModel& model, std::span<const std::uint8_t> patient_row,
                    double theta_p);

struct Confusion {
  std::int64_t tp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;
  std::int64_t fp = 0;
};

struct RocPoint {
  double threshold = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  Confusion confusion;
};

struct RocReport {
  std::vector<RocPoint> points;  // ascending threshold
  double auc = 0.0;
  double operating_threshold = 0.5;
  Confusion operating;
};

inline constexpr double kDefaultOperatingThreshold = 0.5;

// Sweeps the threshold over every distinct score plus one sentinel below the
// minimum and one above the maximum, classifying with the strict rule above.
// AUC is the trapezoid area under (1 - specificity, sensitivity).
// Throws Error(kData) unless both classes are present.
RocReport RocFromScores(std::span<const double> scores, const std::vector<bool>& labels,
                        double operating_threshold = kDefaultOperatingThreshold);
RocReport Roc(const RuleModel& model, const BinaryDataset& ds,
              double operating_threshold = kDefaultOperatingThreshold);

std::vector<double> ScoreAll(const RuleModel& model, const BinaryDataset& ds);

// "threshold,sensitivity,false_positive_rate" rows in ascending threshold.
void WriteRocCsv(const RocReport& report, std::ostream& out);

}  // namespace arsom

#endif  // ARSOM_CLASSIFIER_H_
