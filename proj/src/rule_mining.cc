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

#include "arsom/rule_mining.h"

#include <algorithm>
#include <set>

#include "arsom/error.h"

namespace arsom {

namespace {

struct Itemset {
  std::vector<int> items;
  Bitset cover;
};

}  // namespace

const char* SupportSemanticsName(SupportSemantics s) {
  switch (s) {
    case SupportSemantics::kJoint:
      return "joint";
    case SupportSemantics::kAntecedent:
      return "antecedent";
  }
  return "unknown";
}

SupportSemantics ParseSupportSemantics(const std::string& name) {
  if (name == "joint") return SupportSemantics::kJoint;
  if (name == "antecedent") return SupportSemantics::kAntecedent;
  throw UsageError("unknown support semantics '" + name +
                   "' (expected joint or antecedent)");
}

void MiningConfig::Validate() const {
  if (!(theta_s >= 0.0 && theta_s <= 1.0)) {
    throw UsageError("support threshold must lie in [0, 1]");
  }
  if (!(theta_c >= 0.0 && theta_c <= 1.0)) {
    throw UsageError("confidence threshold must lie in [0, 1]");
  }
  if (theta_l < 1) throw UsageError("maximum rule length must be at least 1");
}

bool MeetsSupport(std::int64_t count, std::int64_t total, double theta) {
  return static_cast<double>(count) >=
         theta * static_cast<double>(total) - kThresholdTolerance;
}

bool MeetsConfidence(std::int64_t pos, std::int64_t neg, double theta) {
  if (pos + neg == 0) return false;
  return static_cast<double>(pos) / static_cast<double>(pos + neg) >=
         theta - kThresholdTolerance;
}

RuleStats StatsFromCounts(std::int64_t pos_cover, std::int64_t neg_cover,
                          std::int64_t num_positive, std::int64_t num_rows,
                          SupportSemantics semantics) {
  RuleStats s;
  s.pos_cover = pos_cover;
  s.neg_cover = neg_cover;
  const double n = static_cast<double>(num_rows);
  const std::int64_t support_count =
      semantics == SupportSemantics::kJoint ? pos_cover : pos_cover + neg_cover;
  s.support = num_rows > 0 ? static_cast<double>(support_count) / n : 0.0;
  if (pos_cover + neg_cover > 0) {
    s.confidence = static_cast<double>(pos_cover) /
                   static_cast<double>(pos_cover + neg_cover);
    if (num_positive > 0) {
      s.lift = s.confidence / (static_cast<double>(num_positive) / n);
    }
  }
  return s;
}

Bitset AntecedentCover(const BinaryDataset& ds,
                       const std::vector<int>& antecedent) {
  if (antecedent.empty()) throw UsageError("antecedent must be non-empty");
  for (const int j : antecedent) {
    if (j < 0 || j >= ds.num_features()) {
      throw UsageError("feature index " + std::to_string(j) + " out of range");
    }
  }
  Bitset cover = ds.column(antecedent[0]);
  for (std::size_t k = 1; k < antecedent.size(); ++k) {
    cover &= ds.column(antecedent[k]);
  }
  return cover;
}

RuleStats ScoreRule(const BinaryDataset& ds, const std::vector<int>& antecedent,
                    SupportSemantics semantics) {
  const Bitset cover = AntecedentCover(ds, antecedent);
  const auto pos = static_cast<std::int64_t>((cover & ds.positive_mask()).count());
  const auto total = static_cast<std::int64_t>(cover.count());
  return StatsFromCounts(pos, total - pos, ds.positive_count(), ds.num_rows(),
                         semantics);
}

std::vector<Rule> MineRules(const BinaryDataset& ds, const MiningConfig& cfg,
                            MiningTrace* trace) {
  cfg.Validate();
  if (ds.positive_count() == 0) {
    throw DataError("rule mining needs at least one positive row");
  }
  const std::int64_t n = ds.num_rows();
  const std::int64_t n_pos = ds.positive_count();
  std::vector<Rule> rules;

  // Counts one candidate, records it, and emits a rule when it qualifies.
  // Returns whether the itemset may be extended (is frequent).
  auto evaluate = [&](const std::vector<int>& items, const Bitset& cover) {
    const auto pos = static_cast<std::int64_t>((cover & ds.positive_mask()).count());
    const auto total = static_cast<std::int64_t>(cover.count());
    const std::int64_t neg = total - pos;
    const std::int64_t support_count =
        cfg.support_semantics == SupportSemantics::kJoint ? pos : total;
    // Zero positive cover is anti-monotone too, so it prunes like support.
    const bool frequent = pos > 0 && MeetsSupport(support_count, n, cfg.theta_s);
    if (trace != nullptr) trace->evaluated.push_back({items, pos, neg, frequent});
    if (frequent && MeetsConfidence(pos, neg, cfg.theta_c)) {
      const RuleStats s = StatsFromCounts(pos, neg, n_pos, n, cfg.support_semantics);
      rules.push_back({items, s.support, s.confidence, s.lift, pos, neg});
    }
    return frequent;
  };

  std::vector<Itemset> level;
  for (int j = 0; j < ds.num_features(); ++j) {
    std::vector<int> items{j};
    if (evaluate(items, ds.column(j))) level.push_back({items, ds.column(j)});
  }

  for (int size = 2; size <= cfg.theta_l && level.size() >= 2; ++size) {
    std::set<std::vector<int>> frequent;
    for (const auto& it : level) frequent.insert(it.items);
    std::vector<Itemset> next;
    // `level` is lexicographically sorted, so itemsets sharing their first
    // size-2 items form contiguous blocks.
    for (std::size_t a = 0; a < level.size(); ++a) {
      for (std::size_t b = a + 1; b < level.size(); ++b) {
        const auto& x = level[a].items;
        const auto& y = level[b].items;
        if (!std::equal(x.begin(), x.end() - 1, y.begin())) break;
        std::vector<int> items = x;
        items.push_back(y.back());
        bool all_subsets_frequent = true;
        std::vector<int> sub(items.size() - 1);
        // The two subsets dropping one of the last two items are x and y.
        for (std::size_t drop = 0; drop + 2 < items.size(); ++drop) {
          std::copy(items.begin(), items.begin() + drop, sub.begin());
          std::copy(items.begin() + drop + 1, items.end(), sub.begin() + drop);
          if (!frequent.count(sub)) {
            all_subsets_frequent = false;
            break;
          }
        }
        if (!all_subsets_frequent) continue;
        Bitset cover = level[a].cover & ds.column(y.back());
        if (evaluate(items, cover)) next.push_back({std::move(items), std::move(cover)});
      }
    }
    level = std::move(next);
  }

  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    if (a.antecedent.size() != b.antecedent.size()) {
      return a.antecedent.size() < b.antecedent.size();
    }
    return a.antecedent < b.antecedent;
  });
  return rules;
}

std::string AntecedentToString(const BinaryDataset& ds,
                               const std::vector<int>& antecedent) {
  std::string out = "{";
  for (std::size_t k = 0; k < antecedent.size(); ++k) {
    if (k > 0) out += ", ";
    out += ds.feature_name(antecedent[k]);
  }
  return out + "}";
}

}  // namespace arsom
