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

#include "arsom/rule_selection.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "arsom/error.h"
#include "test_support.h"

namespace arsom {
namespace {

using ::arsom::testing::BuildLiteralModel;
using ::arsom::testing::CheckLiteralConstraints;
using ::arsom::testing::ExhaustiveSelection;
using ::arsom::testing::LiteralModel;
using ::arsom::testing::MakeRandomInstance;
using ::arsom::testing::OptimalXYGivenZ;
using ::arsom::testing::RandomWeights;

Rule MakeRule(const BinaryDataset& ds, std::vector<int> antecedent) {
  const RuleStats s = ScoreRule(ds, antecedent);
  return {std::move(antecedent), s.support, s.confidence, s.lift, s.pos_cover, s.neg_cover};
}

MiningConfig Lax() {
  MiningConfig t;
  t.theta_s = 0.0;
  t.theta_c = 0.0;
  t.theta_l = 4;
  return t;
}

SelectionProblem Problem(const BinaryDataset& ds, const std::vector<Rule>& rules,
                         const SelectionWeights& w, const MiningConfig& t = Lax()) {
  return SelectionProblem::Create(BuildCoverage(ds, rules), w, t);
}

TEST(SelectionProblemTest, BigMIsRuleCountPlusOne) {
  const BinaryDataset ds({"a", "b"}, {{1, 0}, {0, 1}}, {true, false});
  const SelectionProblem p =
      Problem(ds, {MakeRule(ds, {0}), MakeRule(ds, {1}), MakeRule(ds, {0, 1})}, {});
  EXPECT_EQ(p.big_m, 4);
}

TEST(SelectionWeightsTest, NegativeWeightRejected) {
  SelectionWeights w;
  w.gamma = -1;
  EXPECT_THROW(w.Validate(), Error);
}

TEST(SelectionWeightsTest, LargeLambdaFormula) {
  SelectionWeights w;
  w.alpha = 2;
  w.beta = 3;
  w.gamma = 0.5;
  EXPECT_DOUBLE_EQ(LargeLambda(w, 10, 4, 7), 0.5 * 10 + 2 * 4 + 3 * 7 + 1);
}

TEST(SolveExactTest, SingleCandidate) {
  const BinaryDataset ds({"a", "b"}, {{1, 0}, {1, 1}, {1, 0}, {0, 1}},
                         {true, true, true, false});
  const SelectionProblem p = Problem(ds, {MakeRule(ds, {0})}, {});
  const SelectionSolution sol = SolveExact(p, {0});
  EXPECT_EQ(sol.selected_rules, std::vector<int>{0});
  EXPECT_EQ(sol.objective, -1.0);
  EXPECT_EQ(sol.proof, ProofStatus::kOptimal);
  EXPECT_EQ(sol.covered_pos, (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(sol.covered_neg.empty());
  EXPECT_EQ(sol.used_features, std::vector<int>{0});
}

TEST(SolveExactTest, ZeroLambdaSelectsNothing) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    SelectionWeights w = RandomWeights(rng);
    w.lambda = 0.0;
    const auto inst = MakeRandomInstance(rng, 8, w);
    const std::vector<int> cands = ValidateCandidates(inst.problem);
    const SelectionSolution exact = SolveExact(inst.problem, cands);
    EXPECT_TRUE(exact.selected_rules.empty());
    EXPECT_EQ(exact.objective, 0.0);
    EXPECT_TRUE(SolveGreedy(inst.problem, cands).selected_rules.empty());
  }
}

TEST(SolveExactTest, ZeroBudgetIsUsageError) {
  const BinaryDataset ds({"a"}, {{1}, {0}}, {true, false});
  const SelectionProblem p = Problem(ds, {MakeRule(ds, {0})}, {});
  try {
    SolveExact(p, {0}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUsage);
  }
}

// Two rules share feature f. Alone each costs 2 features for 2 positives;
// together they cost 3 features for 4 positives.
TEST(SolveExactTest, SharedFeatureOptimumFound) {
  const BinaryDataset ds({"f", "a", "b"},
                         {{1, 1, 0}, {1, 1, 0}, {1, 0, 1}, {1, 0, 1}, {0, 0, 0}},
                         {true, true, true, true, false});
  SelectionWeights w;
  w.alpha = 1;
  w.beta = 0;
  w.gamma = 0;
  w.lambda = 1;
  const SelectionProblem p = Problem(ds, {MakeRule(ds, {0, 1}), MakeRule(ds, {0, 2})}, w);
  const SelectionSolution sol = SolveExact(p, {0, 1});
  EXPECT_EQ(sol.selected_rules, (std::vector<int>{0, 1}));
  EXPECT_EQ(sol.objective, -1.0);
  EXPECT_EQ(sol.proof, ProofStatus::kOptimal);
}

TEST(SolveGreedyTest, DominatingRule) {
  const BinaryDataset ds({"a", "b", "c"},
                         {{1, 1, 0}, {1, 0, 1}, {1, 1, 1}, {0, 1, 0}, {0, 0, 1}},
                         {true, true, true, false, false});
  const std::vector<Rule> rules = {MakeRule(ds, {0}), MakeRule(ds, {1}), MakeRule(ds, {2})};
  const SelectionProblem p = Problem(ds, rules, {});
  const SelectionSolution greedy = SolveGreedy(p, {0, 1, 2});
  EXPECT_EQ(greedy.selected_rules, std::vector<int>{0});
  EXPECT_EQ(greedy.proof, ProofStatus::kGreedyHeuristic);
  EXPECT_EQ(SolveExact(p, {0, 1, 2}).selected_rules, std::vector<int>{0});
}

TEST(SolveExactTest, MatchesExhaustiveWithTieBreak) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 120; ++trial) {
    const SelectionWeights w = trial < 20 ? SelectionWeights{} : RandomWeights(rng);
    const int p = 1 + trial % 13;
    const auto inst = MakeRandomInstance(rng, p, w);
    const std::vector<int> cands = ValidateCandidates(inst.problem);
    const LiteralModel model = BuildLiteralModel(inst.ds, inst.rules);
    const auto truth = ExhaustiveSelection(model, inst.problem.weights, cands);
    const SelectionSolution exact = SolveExact(inst.problem, cands);
    EXPECT_EQ(exact.objective, truth.best) << "trial " << trial;
    EXPECT_EQ(exact.selected_rules, truth.optima.front()) << "trial " << trial;
    EXPECT_EQ(exact.proof, ProofStatus::kOptimal);
    EXPECT_EQ(exact.gap, 0.0);
    const SelectionSolution greedy = SolveGreedy(inst.problem, cands);
    EXPECT_GE(greedy.objective, exact.objective);
  }
}

TEST(SolveExactTest, FifteenCandidates) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 4; ++trial) {
    const auto inst = MakeRandomInstance(rng, 15, RandomWeights(rng));
    const std::vector<int> cands = ValidateCandidates(inst.problem);
    const auto truth = ExhaustiveSelection(BuildLiteralModel(inst.ds, inst.rules),
                                           inst.problem.weights, cands);
    EXPECT_EQ(SolveExact(inst.problem, cands).objective, truth.best);
  }
}

TEST(SolveExactTest, ClosedFormMatchesLiteralProgram) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = MakeRandomInstance(rng, 1 + trial % 10, RandomWeights(rng));
    const LiteralModel model = BuildLiteralModel(inst.ds, inst.rules);
    std::vector<int> z(inst.rules.size(), 0);
    std::vector<int> selected;
    for (const int k : ValidateCandidates(inst.problem)) {
      z[k] = static_cast<int>(rng() & 1);
      if (z[k]) selected.push_back(k);
    }
    const auto literal = OptimalXYGivenZ(model, inst.problem.weights, z);
    EXPECT_TRUE(CheckLiteralConstraints(model, Lax(), literal).empty());
    EXPECT_EQ(EvaluateSelection(inst.problem, selected).objective, literal.objective);
  }
}

TEST(SolveExactTest, SolutionsSatisfyLiteralConstraints) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = MakeRandomInstance(rng, 2 + trial % 10, RandomWeights(rng));
    MiningConfig t;
    t.theta_s = 0.1;
    t.theta_c = 0.5;
    t.theta_l = 2;
    const SelectionProblem problem =
        SelectionProblem::Create(inst.problem.coverage, inst.problem.weights, t);
    std::vector<int> cands;
    try {
      cands = ValidateCandidates(problem);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kEmptyCandidates);
      continue;
    }
    const LiteralModel model = BuildLiteralModel(inst.ds, inst.rules);
    for (const SelectionSolution& sol :
         {SolveExact(problem, cands), SolveGreedy(problem, cands)}) {
      testing::LiteralAssignment v;
      v.z.assign(model.p(), 0);
      for (const int k : sol.selected_rules) v.z[k] = 1;
      v.x.assign(model.n(), 0);
      for (const int i : sol.covered_pos) v.x[i] = 1;
      for (const int i : sol.covered_neg) v.x[i] = 1;
      v.y.assign(model.m(), 0);
      for (const int j : sol.used_features) v.y[j] = 1;
      EXPECT_TRUE(CheckLiteralConstraints(model, t, v).empty()) << "trial " << trial;
      EXPECT_EQ(OptimalXYGivenZ(model, problem.weights, v.z).objective, sol.objective);
    }
  }
}

TEST(SolveExactTest, LargerLambdaNeverCoversFewerPositives) {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 60; ++trial) {
    SelectionWeights lo = RandomWeights(rng);
    SelectionWeights hi = lo;
    hi.lambda = lo.lambda + 0.25 * (1 + rng() % 8);
    const auto inst = MakeRandomInstance(rng, 2 + trial % 9, lo);
    const std::vector<int> cands = ValidateCandidates(inst.problem);
    const LiteralModel model = BuildLiteralModel(inst.ds, inst.rules);
    const auto at_lo = ExhaustiveSelection(model, lo, cands);
    const auto at_hi = ExhaustiveSelection(model, hi, cands);
    EXPECT_GE(*std::min_element(at_hi.optima_pos.begin(), at_hi.optima_pos.end()),
              *std::max_element(at_lo.optima_pos.begin(), at_lo.optima_pos.end()));
    const SelectionProblem hi_problem =
        SelectionProblem::Create(inst.problem.coverage, hi, Lax());
    EXPECT_GE(SolveExact(hi_problem, cands).covered_pos.size(),
              SolveExact(inst.problem, cands).covered_pos.size());
  }
}

TEST(SolveExactTest, BudgetExhaustionReportsGap) {
  std::mt19937_64 rng(47);
  bool saw_positive_gap = false;
  for (int trial = 0; trial < 30 && !saw_positive_gap; ++trial) {
    const auto inst = MakeRandomInstance(rng, 14, SelectionWeights{});
    const std::vector<int> cands = ValidateCandidates(inst.problem);
    const SelectionSolution full = SolveExact(inst.problem, cands);
    const SelectionSolution cut = SolveExact(inst.problem, cands, 3);
    if (full.nodes <= 3) continue;
    EXPECT_EQ(cut.proof, ProofStatus::kGreedyHeuristic);
    ASSERT_TRUE(cut.gap.has_value());
    EXPECT_GE(*cut.gap, 0.0);
    EXPECT_GE(cut.objective, full.objective);
    EXPECT_LE(cut.objective - *cut.gap, full.objective + 1e-9);
    saw_positive_gap = *cut.gap > 0.0;
  }
  EXPECT_TRUE(saw_positive_gap);
}

TEST(ValidateCandidatesTest, Boundaries) {
  // 353 patients; a rule of total cover 6 clears 0.01 * 353 = 3.53.
  std::vector<std::vector<std::uint8_t>> cells(353, std::vector<std::uint8_t>(5, 0));
  std::vector<bool> labels(353, false);
  for (int i = 0; i < 6; ++i) cells[i][0] = 1;
  for (int i = 0; i < 5; ++i) labels[i] = true;
  for (int j = 0; j < 5; ++j) cells[10][j] = 1;
  labels[10] = true;
  for (int i = 20; i < 29; ++i) cells[i][1] = 1;
  for (int i = 20; i < 26; ++i) labels[i] = true;
  const BinaryDataset ds({"a", "b", "c", "d", "e"}, cells, labels);
  MiningConfig t;
  t.theta_s = 0.01;
  t.theta_c = 0.7;
  t.theta_l = 4;
  const std::vector<Rule> rules = {MakeRule(ds, {0}), MakeRule(ds, {0, 1, 2, 3, 4}),
                                   MakeRule(ds, {1})};
  const SelectionProblem p = Problem(ds, rules, {}, t);
  // Rule 1 fails on length (and support); rule 2 covers rows 10 and 20-28
  // and sits exactly at 7/10.
  EXPECT_EQ(ValidateCandidates(p), (std::vector<int>{0, 2}));
  t.theta_c = 0.71;
  EXPECT_EQ(ValidateCandidates(Problem(ds, rules, {}, t)), (std::vector<int>{0}));
  t.theta_s = 0.5;
  try {
    ValidateCandidates(Problem(ds, rules, {}, t));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyCandidates);
  }
}

TEST(RunArsomTest, ToyWithLargeLambdaSelectsF1) {
  const BinaryDataset ds = testing::LoadToyDataset();
  MiningConfig cfg;
  cfg.theta_s = testing::kToySupport;
  cfg.theta_c = testing::kToyConfidence;
  SelectionWeights w;
  w.large_lambda = true;
  const ArsomResult r = RunArsom(ds, cfg, w);
  ASSERT_EQ(r.selected.size(), 1u);
  EXPECT_EQ(r.selected[0].antecedent, std::vector<int>{0});
  EXPECT_EQ(r.solution.covered_pos.size(), 7u);
  EXPECT_EQ(r.solution.covered_neg.size(), 3u);
  EXPECT_EQ(r.solution.proof, ProofStatus::kOptimal);
  EXPECT_EQ(r.weights.lambda, 1.0 * 7 + 1.0 * 5 + 1.0 * 1 + 1);
}

TEST(RunArsomTest, NoPositivesIsAnError) {
  const BinaryDataset ds({"a"}, {{1}, {0}}, {false, false});
  EXPECT_THROW(RunArsom(ds, MiningConfig{}, SelectionWeights{}), Error);
}

TEST(RunArsomTest, EmptyMiningHasHint) {
  const BinaryDataset ds({"a"}, {{1}, {0}, {1}, {1}}, {true, false, false, false});
  MiningConfig cfg;
  cfg.theta_c = 0.9;
  try {
    RunArsom(ds, cfg, SelectionWeights{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyCandidates);
    EXPECT_NE(std::string(e.what()).find("lower"), std::string::npos) << e.what();
  }
}

TEST(RunArsomTest, TwoDisjointPlantedRulesBothSelected) {
  // Positives carry {a, b} or {c, d}; negatives carry at most one of each pair.
  std::vector<std::vector<std::uint8_t>> cells;
  std::vector<bool> labels;
  for (int i = 0; i < 8; ++i) {
    cells.push_back(i < 4 ? std::vector<std::uint8_t>{1, 1, 0, 0}
                          : std::vector<std::uint8_t>{0, 0, 1, 1});
    labels.push_back(true);
  }
  for (int i = 0; i < 8; ++i) {
    const std::uint8_t u = i & 1;
    const std::uint8_t v = (i >> 1) & 1;
    cells.push_back({u, static_cast<std::uint8_t>(1 - u), v,
                     static_cast<std::uint8_t>(1 - v)});
    labels.push_back(false);
  }
  const BinaryDataset ds({"a", "b", "c", "d"}, cells, labels);
  MiningConfig cfg;
  cfg.theta_s = 0.1;
  cfg.theta_c = 0.9;
  const ArsomResult r = RunArsom(ds, cfg, SelectionWeights{});
  ASSERT_EQ(r.selected.size(), 2u);
  EXPECT_EQ(r.selected[0].antecedent, (std::vector<int>{0, 1}));
  EXPECT_EQ(r.selected[1].antecedent, (std::vector<int>{2, 3}));
  EXPECT_EQ(r.solution.covered_pos.size(), 8u);
  EXPECT_TRUE(r.solution.covered_neg.empty());
  const LiteralModel model = BuildLiteralModel(ds, r.candidates);
  EXPECT_EQ(ExhaustiveSelection(model, r.weights, r.valid).best, r.solution.objective);
}

}  // namespace
}  // namespace arsom
