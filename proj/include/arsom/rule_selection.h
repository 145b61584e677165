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

#ifndef ARSOM_RULE_SELECTION_H_
#define ARSOM_RULE_SELECTION_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "arsom/coverage.h"
#include "arsom/dataset.h"
#include "arsom/rule_mining.h"

namespace arsom {

// Objective weights: alpha per used feature, beta per selected rule, gamma
// per covered negative, and lambda as the reward per covered positive.
struct SelectionWeights {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double lambda = 1.0;
  // Replace lambda by LargeLambda() once the candidate pool is known.
  bool large_lambda = false;

  void Validate() const;
};

// A reward large enough that covering one more positive always outweighs
// every cost the model could incur: gamma*|I-| + alpha*m + beta*p + 1.
double LargeLambda(const SelectionWeights& w, int num_negative, int num_features,
                   int num_rules);

// Returns `w` with lambda replaced by LargeLambda() when large_lambda is set.
SelectionWeights ResolveWeights(SelectionWeights w, const CoverageMatrix& cov);

struct SelectionProblem {
  CoverageMatrix coverage;
  SelectionWeights weights;
  MiningConfig thresholds;
  // Big-M constant of the linking constraints, |K| + 1.
  int big_m = 0;

  static SelectionProblem Create(CoverageMatrix coverage, SelectionWeights weights,
                                 MiningConfig thresholds);
};

enum class ProofStatus { kOptimal, kGreedyHeuristic };
const char* ProofStatusName(ProofStatus p);

struct ObjectiveTerms {
  double feature_cost = 0.0;  // alpha * |used features|
  double rule_cost = 0.0;     // beta * |selected rules|
  double neg_penalty = 0.0;   // gamma * |covered negatives|
  double pos_reward = 0.0;    // lambda * |covered positives|
};

ObjectiveTerms ComputeObjectiveTerms(const SelectionWeights& w,
                                     std::int64_t num_features,
                                     std::int64_t num_rules,
                                     std::int64_t num_neg, std::int64_t num_pos);
// feature_cost + rule_cost + neg_penalty - pos_reward, summed in that order.
double ObjectiveValue(const ObjectiveTerms& t);

struct SelectionSolution {
  std::vector<int> selected_rules;  // indices into the problem's rule list
  std::vector<int> covered_pos;     // patient indices
  std::vector<int> covered_neg;
  std::vector<int> used_features;
  double objective = 0.0;
  ObjectiveTerms terms;
  ProofStatus proof = ProofStatus::kGreedyHeuristic;
  // Incumbent minus best open lower bound; unset when no bound is known.
  std::optional<double> gap;
  std::int64_t nodes = 0;
};

// Derives the covered patients and used features implied by a rule
// selection and prices it with the closed-form objective.
SelectionSolution EvaluateSelection(const SelectionProblem& problem,
                                    std::vector<int> selected);

// Indices of rules that may be selected at all: total cover of at least
// theta_s * |I|, confidence of at least theta_c and at most theta_l
// features. Throws Error(kEmptyCandidates) if none survive.
std::vector<int> ValidateCandidates(const SelectionProblem& problem);

inline constexpr std::int64_t kDefaultNodeBudget = 10'000'000;

// Depth-first branch and bound over include/exclude decisions on the
// candidates. Ties between optimal selections go to the lexicographically
// smallest 0/1 indicator vector over the sorted candidate list. Exhausting
// the node budget returns the incumbent marked kGreedyHeuristic with a gap.
SelectionSolution SolveExact(const SelectionProblem& problem,
                             std::vector<int> candidates,
                             std::int64_t node_budget = kDefaultNodeBudget,
                             const SelectionSolution* warm_start = nullptr);

// Repeatedly adds the candidate with the most negative change in objective
// until no candidate improves it.
SelectionSolution SolveGreedy(const SelectionProblem& problem,
                              std::vector<int> candidates);

struct ArsomResult {
  SelectionWeights weights;      // as used, with lambda resolved
  std::vector<Rule> candidates;  // mined rules, indexed by solution.selected_rules
  std::vector<int> valid;        // candidates passing ValidateCandidates
  SelectionSolution solution;
  std::vector<Rule> selected;    // the refined rule set
};

// Mining, coverage, candidate validation, greedy warm start, exact solve.
ArsomResult RunArsom(const BinaryDataset& ds, const MiningConfig& cfg,
                     const SelectionWeights& weights,
                     std::int64_t node_budget = kDefaultNodeBudget);

}  // namespace arsom

#endif  // ARSOM_RULE_SELECTION_H_
