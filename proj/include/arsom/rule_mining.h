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

#ifndef ARSOM_RULE_MINING_H_
#define ARSOM_RULE_MINING_H_

#include <cstdint>
#include <string>
#include <vector>

#include "arsom/dataset.h"

namespace arsom {

// Which count the minimum-support threshold applies to.
enum class SupportSemantics {
  // Patients matching the antecedent and in the positive class.
  kJoint,
  // Patients matching the antecedent, whatever their class.
  kAntecedent,
};

const char* SupportSemanticsName(SupportSemantics s);
SupportSemantics ParseSupportSemantics(const std::string& name);

struct MiningConfig {
  double theta_s = 0.01;  // minimum support, fraction of all patients
  double theta_c = 0.7;   // minimum confidence
  int theta_l = 4;        // maximum antecedent size
  SupportSemantics support_semantics = SupportSemantics::kJoint;

  // Throws Error(kUsage) on out-of-range values.
  void Validate() const;
};

// Slack applied to every fractional threshold comparison so that a value
// that equals its threshold mathematically is not rejected by rounding.
inline constexpr double kThresholdTolerance = 1e-9;

// count >= theta * total, tolerant of rounding in theta * total.
bool MeetsSupport(std::int64_t count, std::int64_t total, double theta);
// pos / (pos + neg) >= theta; false when nothing is covered.
bool MeetsConfidence(std::int64_t pos, std::int64_t neg, double theta);

// Class-association rule: antecedent -> positive class.
struct Rule {
  std::vector<int> antecedent;  // sorted feature indices, non-empty
  double support = 0.0;
  double confidence = 0.0;
  double lift = 0.0;
  std::int64_t pos_cover = 0;
  std::int64_t neg_cover = 0;

  std::int64_t total_cover() const { return pos_cover + neg_cover; }
  bool operator==(const Rule&) const = default;
};

struct RuleStats {
  double support = 0.0;
  double confidence = 0.0;
  double lift = 0.0;
  std::int64_t pos_cover = 0;
  std::int64_t neg_cover = 0;
};

// Metrics from raw counts. Confidence and lift are 0 when nothing is covered.
RuleStats StatsFromCounts(std::int64_t pos_cover, std::int64_t neg_cover,
                          std::int64_t num_positive, std::int64_t num_rows,
                          SupportSemantics semantics = SupportSemantics::kJoint);

// Scores `antecedent` against the full dataset by subset match.
RuleStats ScoreRule(const BinaryDataset& ds, const std::vector<int>& antecedent,
                    SupportSemantics semantics = SupportSemantics::kJoint);

// Bitset of patients whose row holds every antecedent feature.
Bitset AntecedentCover(const BinaryDataset& ds, const std::vector<int>& antecedent);

// Every itemset whose counts the miner computed, in evaluation order.
struct MiningTrace {
  struct Entry {
    std::vector<int> antecedent;
    std::int64_t pos_cover = 0;
    std::int64_t neg_cover = 0;
    bool frequent = false;
  };
  std::vector<Entry> evaluated;
};

// Apriori over the positive-class transactions. Returns every rule with
// 1 <= |antecedent| <= theta_l, positive cover > 0, support >= theta_s and
// confidence >= theta_c, sorted by (size, lexicographic antecedent).
std::vector<Rule> MineRules(const BinaryDataset& ds, const MiningConfig& cfg,
                            MiningTrace* trace = nullptr);

std::string AntecedentToString(const BinaryDataset& ds,
                               const std::vector<int>& antecedent);

}  // namespace arsom

#endif  // ARSOM_RULE_MINING_H_
