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

// Independent reference implementations and data generators shared by the
// unit and acceptance suites. Nothing here calls into the code it checks
// except to read inputs.

#ifndef ARSOM_TESTS_TEST_SUPPORT_H_
#define ARSOM_TESTS_TEST_SUPPORT_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "arsom/dataset.h"
#include "arsom/rule_mining.h"
#include "arsom/rule_selection.h"

namespace arsom::testing {

std::string TestDataPath(const std::string& name);
BinaryDataset LoadToyDataset();
inline constexpr double kToySupport = 5.0 / 17.0;
inline constexpr double kToyConfidence = 0.7;

// Cells are Bernoulli(density), labels Bernoulli(positive_rate); at least
// one positive and one negative row are forced.
BinaryDataset RandomDataset(std::mt19937_64& rng, int rows, int features,
                            double density = 0.5, double positive_rate = 0.4);

// ---- Mining oracle -------------------------------------------------------

// Scores every antecedent of size <= cfg.theta_l directly from the cells.
std::vector<Rule> BruteForceRules(const BinaryDataset& ds, const MiningConfig& cfg);

// ---- Selection oracles ---------------------------------------------------

// The matrices of the integer program, built cell by cell: a (patients x
// features), b (features x rules), c (patients x rules) and the class split.
struct LiteralModel {
  std::vector<std::vector<int>> a;
  std::vector<std::vector<int>> b;
  std::vector<std::vector<int>> c;
  std::vector<bool> positive;
  int big_m = 0;

  int n() const { return static_cast<int>(a.size()); }
  int m() const { return a.empty() ? 0 : static_cast<int>(a[0].size()); }
  int p() const { return b.empty() ? 0 : static_cast<int>(b[0].size()); }
};

LiteralModel BuildLiteralModel(const BinaryDataset& ds, const std::vector<Rule>& rules);

struct LiteralAssignment {
  std::vector<int> x, y, z;
  double objective = 0.0;
};

// For a fixed z, picks each x_i and y_j as the cheaper of {0, 1} among the
// values that satisfy its own linking constraint, then prices the full
// objective.
LiteralAssignment OptimalXYGivenZ(const LiteralModel& model, const SelectionWeights& w,
                                  const std::vector<int>& z);

// Names of every constraint family violated by (x, y, z), empty if none.
std::vector<std::string> CheckLiteralConstraints(const LiteralModel& model,
                                                 const MiningConfig& thresholds,
                                                 const LiteralAssignment& v);

struct ExhaustiveResult {
  double best = 0.0;
  // Optimal selections (problem rule indices), in increasing order of the
  // indicator vector over the sorted candidates.
  std::vector<std::vector<int>> optima;
  std::vector<std::int64_t> optima_pos;  // covered positives per optimum
};

// Enumerates all 2^|candidates| selections.
ExhaustiveResult ExhaustiveSelection(const LiteralModel& model,
                                     const SelectionWeights& w,
                                     const std::vector<int>& candidates);

// A selection problem with random rules over a random dataset.
struct RandomInstance {
  BinaryDataset ds;
  std::vector<Rule> rules;
  SelectionProblem problem;
};
RandomInstance MakeRandomInstance(std::mt19937_64& rng, int num_rules,
                                  const SelectionWeights& w);

// Weights drawn from {0, 0.25, ..., 4}, so every objective is exact.
SelectionWeights RandomWeights(std::mt19937_64& rng);

// ---- Ranking oracle ------------------------------------------------------

// Fraction of (positive, negative) pairs ranked correctly, ties counting 1/2.
double MannWhitneyAuc(const std::vector<double>& scores, const std::vector<bool>& labels);

// ---- Planted-rule generator ----------------------------------------------

struct PlantedSpec {
  int rows = 500;
  int planted_rules = 3;
  int noise_features = 6;
  double positive_rate = 1.0 / 3.0;
  // Probability of each planted feature in rows not carrying its pair.
  double background_density = 0.35;
  double noise_density = 0.3;
  // Positives carrying no planted pair.
  double outlier_rate = 0.03;
};

struct PlantedData {
  BinaryDataset ds;
  // Each planted antecedent as feature names, e.g. {"p0a", "p0b"}.
  std::vector<std::vector<std::string>> planted;
};

// Every positive except outliers carries exactly one complete planted pair
// and no row carries a pair otherwise, so each planted rule has confidence 1.
PlantedData MakePlantedData(std::mt19937_64& rng, const PlantedSpec& spec);

// ---- Printed rule tables -------------------------------------------------

struct PublishedRule {
  const char* subgroup;
  std::vector<std::string> antecedent;
  double support;
  double confidence;
  double lift;
  int pos_cover;
  int neg_cover;
};

struct PublishedSubgroup {
  const char* name;
  int positives;
  int negatives;
};

const std::vector<PublishedSubgroup>& PublishedSubgroups();
const std::vector<PublishedRule>& PublishedRules();

}  // namespace arsom::testing

#endif  // ARSOM_TESTS_TEST_SUPPORT_H_
