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

#include "arsom/coverage.h"

#include <ostream>

#include "arsom/error.h"

namespace arsom {

std::int64_t CoverageMatrix::pos_count(int k) const {
  return static_cast<std::int64_t>((columns_[k] & positive_mask_).count());
}

std::int64_t CoverageMatrix::neg_count(int k) const {
  return static_cast<std::int64_t>((columns_[k] & negative_mask_).count());
}

CoverageMatrix BuildCoverage(const BinaryDataset& ds, std::vector<Rule> rules) {
  if (rules.empty()) {
    throw Error(ErrorKind::kEmptyCandidates,
                "no candidate rules to build coverage from");
  }
  CoverageMatrix cov;
  cov.num_patients_ = ds.num_rows();
  cov.num_features_ = ds.num_features();
  cov.positive_mask_ = ds.positive_mask();
  cov.negative_mask_ = ds.negative_mask();
  for (int i = 0; i < ds.num_rows(); ++i) {
    (ds.is_positive(i) ? cov.pos_rows_ : cov.neg_rows_).push_back(i);
  }
  cov.columns_.reserve(rules.size());
  cov.rule_features_.reserve(rules.size());
  for (const Rule& r : rules) {
    cov.columns_.push_back(AntecedentCover(ds, r.antecedent));
    Bitset features(ds.num_features());
    for (const int j : r.antecedent) features.set(j);
    cov.rule_features_.push_back(std::move(features));
  }
  cov.rules_ = std::move(rules);
  return cov;
}

void WriteCoverageCsv(const CoverageMatrix& cov, std::ostream& out) {
  out << "patient,label";
  for (int k = 0; k < cov.num_rules(); ++k) out << ",r" << k;
  out << '\n';
  for (int i = 0; i < cov.num_patients(); ++i) {
    out << i << ',' << (cov.positive_mask()[i] ? 1 : 0);
    for (int k = 0; k < cov.num_rules(); ++k) out << ',' << (cov.covers(i, k) ? 1 : 0);
    out << '\n';
  }
}

}  // namespace arsom
