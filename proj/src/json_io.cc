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

#include "arsom/json_io.h"

#include <algorithm>

#include "arsom/error.h"

namespace arsom {

namespace {

Json OptionalNumber(const std::optional<double>& v) {
  return v.has_value() ? Json(*v) : Json(nullptr);
}

Json ToJson(const MeanStd& s) { return Json{{"mean", s.mean}, {"std", s.std}}; }

Json ToJson(const Confusion& c) {
  return Json{{"tp", c.tp}, {"fn", c.fn}, {"tn", c.tn}, {"fp", c.fp}};
}

Json Names(const std::vector<int>& indices, const std::vector<std::string>& names) {
  Json out = Json::array();
  for (const int j : indices) out.push_back(names.at(j));
  return out;
}

}  // namespace

Json ToJson(const MiningConfig& cfg) {
  return Json{{"support", cfg.theta_s},
              {"confidence", cfg.theta_c},
              {"max_len", cfg.theta_l},
              {"support_semantics", SupportSemanticsName(cfg.support_semantics)}};
}

Json ToJson(const SelectionWeights& w) {
  return Json{{"alpha", w.alpha},
              {"beta", w.beta},
              {"gamma", w.gamma},
              {"lambda", w.lambda},
              {"lambda_large", w.large_lambda}};
}

Json ToJson(const FoldPlan& plan) {
  return Json{{"repeats", plan.repeats},
              {"folds", plan.folds},
              {"seed", plan.seed},
              {"rng", kFoldRngAlgorithm},
              {"assignments", plan.assignments}};
}

FoldPlan FoldPlanFromJson(const Json& doc) {
  try {
    FoldPlan plan;
    plan.repeats = doc.at("repeats").get<int>();
    plan.folds = doc.at("folds").get<int>();
    plan.seed = doc.at("seed").get<std::uint64_t>();
    plan.assignments = doc.at("assignments").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(plan.assignments.size()) != plan.repeats) {
      throw DataError("fold plan: assignment count does not match repeats");
    }
    return plan;
  } catch (const Json::exception& e) {
    throw DataError(std::string("fold plan: ") + e.what());
  }
}

Json ToJson(const RocReport& report) {
  Json points = Json::array();
  for (const RocPoint& p : report.points) {
    points.push_back(Json{{"threshold", p.threshold},
                          {"sensitivity", p.sensitivity},
                          {"specificity", p.specificity},
                          {"confusion", ToJson(p.confusion)}});
  }
  return Json{{"auc", report.auc},
              {"operating_threshold", report.operating_threshold},
              {"operating_confusion", ToJson(report.operating)},
              {"points", std::move(points)}};
}

Json RuleToJson(const Rule& rule, const std::vector<std::string>& feature_names) {
  return Json{{"antecedent", Names(rule.antecedent, feature_names)},
              {"support", rule.support},
              {"confidence", rule.confidence},
              {"lift", rule.lift},
              {"pos_cover", rule.pos_cover},
              {"neg_cover", rule.neg_cover}};
}

Json RulesToJson(const std::vector<Rule>& rules,
                 const std::vector<std::string>& feature_names) {
  Json out = Json::array();
  for (const Rule& r : rules) out.push_back(RuleToJson(r, feature_names));
  return out;
}

Json SelectionToJson(const ArsomResult& result,
                     const std::vector<std::string>& feature_names,
                     const MiningConfig& cfg, std::int64_t node_budget) {
  const SelectionSolution& sol = result.solution;
  Json doc;
  doc["config"] = Json{{"mining", ToJson(cfg)},
                       {"weights", ToJson(result.weights)},
                       {"node_budget", node_budget}};
  doc["feature_names"] = feature_names;
  doc["rules"] = RulesToJson(result.selected, feature_names);
  doc["objective"] = Json{{"value", sol.objective},
                          {"feature_cost", sol.terms.feature_cost},
                          {"rule_cost", sol.terms.rule_cost},
                          {"neg_penalty", sol.terms.neg_penalty},
                          {"pos_reward", sol.terms.pos_reward}};
  doc["proof"] = ProofStatusName(sol.proof);
  doc["gap"] = OptionalNumber(sol.gap);
  doc["nodes"] = sol.nodes;
  doc["used_features"] = Names(sol.used_features, feature_names);
  doc["covered_pos"] = sol.covered_pos.size();
  doc["covered_neg"] = sol.covered_neg.size();
  doc["mined_candidates"] = result.candidates.size();
  doc["valid_candidates"] = result.valid.size();
  return doc;
}

RuleModel RuleModelFromJson(const Json& doc) {
  try {
    auto names = doc.at("feature_names").get<std::vector<std::string>>();
    std::vector<Rule> rules;
    for (const Json& r : doc.at("rules")) {
      Rule rule;
      for (const auto& name : r.at("antecedent").get<std::vector<std::string>>()) {
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) {
          throw DataError("model rule uses unknown feature '" + name + "'");
        }
        rule.antecedent.push_back(static_cast<int>(it - names.begin()));
      }
      std::sort(rule.antecedent.begin(), rule.antecedent.end());
      rule.confidence = r.at("confidence").get<double>();
      rule.support = r.value("support", 0.0);
      rule.lift = r.value("lift", 0.0);
      rule.pos_cover = r.value("pos_cover", std::int64_t{0});
      rule.neg_cover = r.value("neg_cover", std::int64_t{0});
      rules.push_back(std::move(rule));
    }
    if (rules.empty()) throw DataError("model file lists no rules");
    return RuleModel(std::move(names), std::move(rules));
  } catch (const Json::exception& e) {
    throw DataError(std::string("model file: ") + e.what());
  } catch (const Error& e) {
    throw DataError(std::string("model file: ") + e.what());
  }
}

Json ToJson(const CvReport& report) {
  Json doc;
  doc["config"] = Json{{"mining", ToJson(report.mining)},
                       {"weights", ToJson(report.weights)},
                       {"repeats", report.repeats},
                       {"folds", report.folds},
                       {"seed", report.seed},
                       {"rng", kFoldRngAlgorithm},
                       {"stratified", true},
                       {"node_budget", report.node_budget},
                       {"operating_threshold", report.operating_threshold},
                       {"dropped_features", report.dropped_features}};
  Json records = Json::array();
  for (const FoldRecord& r : report.records) {
    Json rec{{"repeat", r.repeat},
             {"fold", r.fold},
             {"train_rows", r.train_rows},
             {"test_rows", r.test_rows},
             {"status", r.ok ? "ok" : "failed"}};
    if (r.ok) {
      rec["auc"] = r.auc;
      rec["rule_count"] = r.rule_count;
      rec["feature_count"] = r.feature_count;
      rec["solver_proof"] = ProofStatusName(r.proof);
      rec["gap"] = OptionalNumber(r.gap);
      rec["solver_nodes"] = r.solver_nodes;
      rec["rules"] = r.rules;
    } else {
      rec["reason"] = r.failure;
    }
    if (r.runtime_ms.has_value()) rec["runtime_ms"] = *r.runtime_ms;
    records.push_back(std::move(rec));
  }
  doc["folds"] = std::move(records);
  doc["aggregates"] = Json{{"completed", report.completed},
                           {"failed", report.failed},
                           {"auc", ToJson(report.auc)},
                           {"rule_count", ToJson(report.rule_count)},
                           {"feature_count", ToJson(report.feature_count)}};
  return doc;
}

}  // namespace arsom
