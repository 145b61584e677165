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

#ifndef ARSOM_COVERAGE_H_
#define ARSOM_COVERAGE_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "arsom/dataset.h"
#include "arsom/rule_mining.h"

namespace arsom {

// Patient-by-rule incidence: bit (i, k) is set iff patient i has every
// feature of rule k's antecedent. Stored column-wise, one packed bitset per
// rule, plus each rule's antecedent as a feature bitset.
class CoverageMatrix {
 public:
  int num_patients() const { return num_patients_; }
  int num_features() const { return num_features_; }
  int num_rules() const { return static_cast<int>(rules_.size()); }

  const std::vector<Rule>& rules() const { return rules_; }
  const Rule& rule(int k) const { return rules_[k]; }

  bool covers(int i, int k) const { return columns_[k][i]; }
  const Bitset& column(int k) const { return columns_[k]; }
  const Bitset& rule_features(int k) const { return rule_features_[k]; }

  const Bitset& positive_mask() const { return positive_mask_; }
  const Bitset& negative_mask() const { return negative_mask_; }
  const std::vector<int>& pos_rows() const { return pos_rows_; }
  const std::vector<int>& neg_rows() const { return neg_rows_; }

  std::int64_t pos_count(int k) const;
  std::int64_t neg_count(int k) const;

 private:
  friend CoverageMatrix BuildCoverage(const BinaryDataset& ds,
                                      std::vector<Rule> rules);
  int num_patients_ = 0;
  int num_features_ = 0;
  std::vector<Rule> rules_;
  std::vector<Bitset> columns_;
  std::vector<Bitset> rule_features_;
  Bitset positive_mask_;
  Bitset negative_mask_;
  std::vector<int> pos_rows_;
  std::vector<int> neg_rows_;
};

// Throws Error(kEmptyCandidates) on an empty rule list.
CoverageMatrix BuildCoverage(const BinaryDataset& ds, std::vector<Rule> rules);

// Header "patient,label,r0,r1,..."; one 0/1 row per patient.
void WriteCoverageCsv(const CoverageMatrix& cov, std::ostream& out);

}  // namespace arsom

#endif  // ARSOM_COVERAGE_H_
