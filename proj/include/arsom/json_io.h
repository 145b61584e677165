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

#ifndef ARSOM_JSON_IO_H_
#define ARSOM_JSON_IO_H_

#include <string>
#include <vector>

#include "json.hpp"

#include "arsom/classifier.h"
#include "arsom/cross_validation.h"
#include "arsom/dataset.h"
#include "arsom/rule_mining.h"
#include "arsom/rule_selection.h"

namespace arsom {

// Keys keep insertion order so reports read top-down.
using Json = nlohmann::ordered_json;

Json ToJson(const MiningConfig& cfg);
Json ToJson(const SelectionWeights& w);
Json ToJson(const FoldPlan& plan);
Json ToJson(const RocReport& report);
Json ToJson(const CvReport& report);

// Antecedents are written as feature names, not indices.
Json RuleToJson(const Rule& rule, const std::vector<std::string>& feature_names);
Json RulesToJson(const std::vector<Rule>& rules,
                 const std::vector<std::string>& feature_names);

// Selection report; its "feature_names" and "rules" members double as a
// model file for RuleModelFromJson.
Json SelectionToJson(const ArsomResult& result,
                     const std::vector<std::string>& feature_names,
                     const MiningConfig& cfg, std::int64_t node_budget);

// Throws Error(kData) on a malformed document.
RuleModel RuleModelFromJson(const Json& doc);
FoldPlan FoldPlanFromJson(const Json& doc);

}  // namespace arsom

#endif  // ARSOM_JSON_IO_H_
