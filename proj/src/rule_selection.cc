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

#include <algorithm>
#include <bit>
#include <cmath>
#include <iterator>
#include <limits>
#include <string>

#include "arsom/error.h"

namespace arsom {

namespace {

using Words = std::vector<std::uint64_t>;

constexpr double kObjectiveTolerance = 1e-9;
constexpr double kMaxNegativeTable = 5e7;
constexpr double kUnset = std::numeric_limits<double>::infinity();

Words ToWords(const Bitset& bits) {
  Words out;
  out.reserve(bits.num_blocks());
  boost::to_block_range(bits, std::back_inserter(out));
  return out;
}

// |a & ~b|
std::int64_t CountNew(const Words& a, const Words& b) {
  std::int64_t c = 0;
  for (std::size_t w = 0; w < a.size(); ++w) c += std::popcount(a[w] & ~b[w]);
  return c;
}

void OrInto(Words& dst, const Words& src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
}

// Candidate rules packed as raw words for the inner loops of the solvers.
struct PackedCandidates {
  std::vector<int> ids;
  std::vector<Words> pos;
  std::vector<Words> neg;
  std::vector<Words> feat;
  std::size_t patient_words = 0;
  std::size_t feature_words = 0;

  PackedCandidates(const CoverageMatrix& cov, std::vector<int> candidates)
      : ids(std::move(candidates)) {
    for (const int k : ids) {
      pos.push_back(ToWords(cov.column(k) & cov.positive_mask()));
      neg.push_back(ToWords(cov.column(k) & cov.negative_mask()));
      feat.push_back(ToWords(cov.rule_features(k)));
    }
    patient_words = Bitset(cov.num_patients()).num_blocks();
    feature_words = Bitset(cov.num_features()).num_blocks();
  }
  int size() const { return static_cast<int>(ids.size()); }
};

struct SearchState {
  Words pos, neg, feat;
  std::int64_t num_features = 0;
  std::int64_t num_rules = 0;
  std::int64_t num_neg = 0;
  std::int64_t num_pos = 0;

  SearchState(std::size_t patient_words, std::size_t feature_words)
      : pos(patient_words, 0), neg(patient_words, 0), feat(feature_words, 0) {}
};

std::vector<int> NormalizeCandidates(const SelectionProblem& problem,
                                     std::vector<int> candidates) {
  if (candidates.empty()) {
    throw Error(ErrorKind::kEmptyCandidates, "candidate list is empty");
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  for (const int k : candidates) {
    if (k < 0 || k >= problem.coverage.num_rules()) {
      throw UsageError("candidate index " + std::to_string(k) + " out of range");
    }
  }
  return candidates;
}

class BranchAndBound {
 public:
  BranchAndBound(const SelectionProblem& problem, std::vector<int> candidates,
                 std::int64_t node_budget)
      : weights_(problem.weights),
        packed_(problem.coverage, std::move(candidates)),
        budget_(node_budget),
        z_(packed_.size(), 0),
        best_z_(packed_.size(), 0) {
    const int num_candidates = packed_.size();
    const int m = problem.coverage.num_features();
    // remaining_with_feature_[d][f]: candidates at positions >= d using f.
    remaining_with_feature_.assign(num_candidates + 1, std::vector<int>(m, 0));
    for (int d = num_candidates - 1; d >= 0; --d) {
      remaining_with_feature_[d] = remaining_with_feature_[d + 1];
      for (const int f : problem.coverage.rule(packed_.ids[d]).antecedent) {
        ++remaining_with_feature_[d][f];
      }
    }
    // Same counts per negative patient, when small enough to tabulate.
    const int n = problem.coverage.num_patients();
    if (static_cast<double>(num_candidates + 1) * n <= kMaxNegativeTable) {
      remaining_with_neg_.assign(num_candidates + 1, std::vector<int>(n, 0));
      for (int d = num_candidates - 1; d >= 0; --d) {
        remaining_with_neg_[d] = remaining_with_neg_[d + 1];
        ForEachNew(packed_.neg[d], Words(packed_.patient_words, 0),
                   [&](int i) { ++remaining_with_neg_[d][i]; });
      }
    }
    rate_.assign(n, kUnset);
    antecedents_.reserve(num_candidates);
    for (const int k : packed_.ids) {
      antecedents_.push_back(problem.coverage.rule(k).antecedent);
    }
    for (int level = 0; level <= num_candidates; ++level) {
      stack_.emplace_back(packed_.patient_words, packed_.feature_words);
    }
  }

  void Run(const SelectionSolution* warm_start) {
    // The empty selection is always feasible and has the smallest indicator
    // vector, so it is the starting incumbent.
    best_objective_ = 0.0;
    if (warm_start != nullptr &&
        warm_start->objective < best_objective_ - kObjectiveTolerance) {
      std::fill(best_z_.begin(), best_z_.end(), 0);
      for (const int k : warm_start->selected_rules) {
        const auto it = std::lower_bound(packed_.ids.begin(), packed_.ids.end(), k);
        if (it != packed_.ids.end() && *it == k) best_z_[it - packed_.ids.begin()] = 1;
      }
      best_objective_ = warm_start->objective;
    }
    Search(0, 0);
  }

  std::vector<int> best_selection() const {
    std::vector<int> out;
    for (int d = 0; d < packed_.size(); ++d) {
      if (best_z_[d]) out.push_back(packed_.ids[d]);
    }
    return out;
  }
  bool exhausted() const { return exhausted_; }
  double best_objective() const { return best_objective_; }
  double open_lower_bound() const { return open_lower_bound_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  double Objective(const SearchState& s) const {
    return ObjectiveValue(ComputeObjectiveTerms(weights_, s.num_features,
                                                s.num_rules, s.num_neg, s.num_pos));
  }

  // Optimistic completion value. Every remaining candidate k gets a cost
  // floor c_k = beta + alpha * feature share + gamma * negative share, where
  // a share charges each unused feature (uncovered negative) 1/c to each of
  // the c remaining candidates containing it; shares of any selection sum to
  // at most its new features (negatives). Spreading c_k evenly over the P_k
  // positives k would newly cover, a completion pays at least the cheapest
  // such rate for every positive it covers, and earns lambda for each.
  double LowerBound(int depth, const SearchState& s, double objective) {
    const auto& feature_counts = remaining_with_feature_[depth];
    const std::vector<int>* neg_counts =
        remaining_with_neg_.empty() ? nullptr : &remaining_with_neg_[depth];
    touched_.clear();
    for (int d = depth; d < packed_.size(); ++d) {
      const std::int64_t new_pos = CountNew(packed_.pos[d], s.pos);
      if (new_pos == 0) continue;
      const double reward = weights_.lambda * static_cast<double>(new_pos);
      if (weights_.beta >= reward) continue;
      double cost = weights_.beta;
      for (const int f : antecedents_[d]) {
        if (!((s.feat[f / 64] >> (f % 64)) & 1)) {
          cost += weights_.alpha / feature_counts[f];
        }
      }
      if (neg_counts != nullptr && weights_.gamma > 0.0) {
        ForEachNew(packed_.neg[d], s.neg, [&](int i) {
          cost += weights_.gamma / (*neg_counts)[i];
        });
      }
      if (cost >= reward) continue;
      const double rate = cost / static_cast<double>(new_pos);
      ForEachNew(packed_.pos[d], s.pos, [&](int i) {
        if (rate_[i] == kUnset) touched_.push_back(i);
        rate_[i] = std::min(rate_[i], rate);
      });
    }
    double bound = objective;
    for (const int i : touched_) {
      bound += std::min(0.0, rate_[i] - weights_.lambda);
      rate_[i] = kUnset;
    }
    return bound;
  }

  template <typename Fn>
  void ForEachNew(const Words& a, const Words& b, Fn fn) const {
    for (std::size_t w = 0; w < a.size(); ++w) {
      std::uint64_t bits = a[w] & ~b[w];
      while (bits != 0) {
        fn(static_cast<int>(w * 64) + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
  }

  void Offer(double objective) {
    if (objective < best_objective_ - kObjectiveTolerance ||
        (objective <= best_objective_ + kObjectiveTolerance && z_ < best_z_)) {
      best_objective_ = objective;
      best_z_ = z_;
    }
  }

  void Search(int depth, int level) {
    const SearchState& s = stack_[level];
    ++nodes_;
    const double objective = Objective(s);
    Offer(objective);
    if (depth == packed_.size()) return;
    const double bound = LowerBound(depth, s, objective);
    if (nodes_ >= budget_) {
      exhausted_ = true;
      open_lower_bound_ = std::min(open_lower_bound_, bound);
      return;
    }
    if (bound > best_objective_ + kObjectiveTolerance) return;
    // A tie can only replace the incumbent with a smaller indicator vector;
    // the smallest one below this node is the current prefix padded with 0.
    if (bound >= best_objective_ - kObjectiveTolerance && !(z_ < best_z_)) return;

    const std::int64_t new_pos = CountNew(packed_.pos[depth], s.pos);
    // Without new positives, adding the rule cannot lower the objective now
    // or later, and the exclude branch has the smaller indicator vector.
    const bool can_include = new_pos > 0;
    const std::int64_t new_neg = CountNew(packed_.neg[depth], s.neg);
    const std::int64_t new_feat = CountNew(packed_.feat[depth], s.feat);
    const double delta = weights_.alpha * static_cast<double>(new_feat) +
                         weights_.beta + weights_.gamma * static_cast<double>(new_neg) -
                         weights_.lambda * static_cast<double>(new_pos);

    auto include = [&] {
      SearchState& t = stack_[level + 1];
      t.pos = s.pos;
      t.neg = s.neg;
      t.feat = s.feat;
      OrInto(t.pos, packed_.pos[depth]);
      OrInto(t.neg, packed_.neg[depth]);
      OrInto(t.feat, packed_.feat[depth]);
      t.num_features = s.num_features + new_feat;
      t.num_rules = s.num_rules + 1;
      t.num_neg = s.num_neg + new_neg;
      t.num_pos = s.num_pos + new_pos;
      z_[depth] = 1;
      Search(depth + 1, level + 1);
      z_[depth] = 0;
    };
    if (can_include && delta < 0.0) {
      include();
      Search(depth + 1, level);
    } else {
      Search(depth + 1, level);
      if (can_include) include();
    }
  }

  SelectionWeights weights_;
  PackedCandidates packed_;
  std::int64_t budget_;
  std::vector<std::vector<int>> remaining_with_feature_;
  std::vector<std::vector<int>> remaining_with_neg_;
  std::vector<std::vector<int>> antecedents_;
  std::vector<double> rate_;  // scratch for LowerBound, kUnset between calls
  std::vector<int> touched_;
  std::vector<SearchState> stack_;  // indexed by number of included rules
  std::vector<char> z_;
  std::vector<char> best_z_;
  double best_objective_ = 0.0;
  double open_lower_bound_ = std::numeric_limits<double>::infinity();
  bool exhausted_ = false;
  std::int64_t nodes_ = 0;
};

}  // namespace

void SelectionWeights::Validate() const {
  for (const double w : {alpha, beta, gamma, lambda}) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw UsageError("selection weights must be finite and non-negative");
    }
  }
}

double LargeLambda(const SelectionWeights& w, int num_negative, int num_features,
                   int num_rules) {
  return w.gamma * num_negative + w.alpha * num_features + w.beta * num_rules + 1.0;
}

SelectionWeights ResolveWeights(SelectionWeights w, const CoverageMatrix& cov) {
  if (w.large_lambda) {
    w.lambda = LargeLambda(w, static_cast<int>(cov.neg_rows().size()),
                           cov.num_features(), cov.num_rules());
  }
  return w;
}

SelectionProblem SelectionProblem::Create(CoverageMatrix coverage,
                                          SelectionWeights weights,
                                          MiningConfig thresholds) {
  thresholds.Validate();
  weights = ResolveWeights(weights, coverage);
  weights.Validate();
  SelectionProblem p{std::move(coverage), weights, thresholds, 0};
  p.big_m = p.coverage.num_rules() + 1;
  return p;
}

const char* ProofStatusName(ProofStatus p) {
  return p == ProofStatus::kOptimal ? "optimal" : "greedy_heuristic";
}

ObjectiveTerms ComputeObjectiveTerms(const SelectionWeights& w,
                                     std::int64_t num_features,
                                     std::int64_t num_rules,
                                     std::int64_t num_neg, std::int64_t num_pos) {
  return {w.alpha * static_cast<double>(num_features),
          w.beta * static_cast<double>(num_rules),
          w.gamma * static_cast<double>(num_neg),
          w.lambda * static_cast<double>(num_pos)};
}

double ObjectiveValue(const ObjectiveTerms& t) {
  return t.feature_cost + t.rule_cost + t.neg_penalty - t.pos_reward;
}

SelectionSolution EvaluateSelection(const SelectionProblem& problem,
                                    std::vector<int> selected) {
  const CoverageMatrix& cov = problem.coverage;
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
  Bitset covered(cov.num_patients());
  Bitset features(cov.num_features());
  for (const int k : selected) {
    if (k < 0 || k >= cov.num_rules()) {
      throw UsageError("rule index " + std::to_string(k) + " out of range");
    }
    covered |= cov.column(k);
    features |= cov.rule_features(k);
  }
  SelectionSolution sol;
  sol.selected_rules = std::move(selected);
  for (int i = 0; i < cov.num_patients(); ++i) {
    if (!covered[i]) continue;
    (cov.positive_mask()[i] ? sol.covered_pos : sol.covered_neg).push_back(i);
  }
  for (int j = 0; j < cov.num_features(); ++j) {
    if (features[j]) sol.used_features.push_back(j);
  }
  sol.terms = ComputeObjectiveTerms(
      problem.weights, static_cast<std::int64_t>(sol.used_features.size()),
      static_cast<std::int64_t>(sol.selected_rules.size()),
      static_cast<std::int64_t>(sol.covered_neg.size()),
      static_cast<std::int64_t>(sol.covered_pos.size()));
  sol.objective = ObjectiveValue(sol.terms);
  return sol;
}

std::vector<int> ValidateCandidates(const SelectionProblem& problem) {
  const CoverageMatrix& cov = problem.coverage;
  const MiningConfig& t = problem.thresholds;
  std::vector<int> valid;
  for (int k = 0; k < cov.num_rules(); ++k) {
    const std::int64_t pos = cov.pos_count(k);
    const std::int64_t neg = cov.neg_count(k);
    const bool support_ok = MeetsSupport(pos + neg, cov.num_patients(), t.theta_s);
    const bool confidence_ok = MeetsConfidence(pos, neg, t.theta_c);
    const bool length_ok =
        static_cast<int>(cov.rule(k).antecedent.size()) <= t.theta_l;
    if (support_ok && confidence_ok && length_ok) valid.push_back(k);
  }
  if (valid.empty()) {
    throw Error(ErrorKind::kEmptyCandidates,
                "no candidate rule satisfies the support, confidence and length "
                "constraints");
  }
  return valid;
}

SelectionSolution SolveExact(const SelectionProblem& problem,
                             std::vector<int> candidates, std::int64_t node_budget,
                             const SelectionSolution* warm_start) {
  if (node_budget <= 0) throw UsageError("node budget must be positive");
  candidates = NormalizeCandidates(problem, std::move(candidates));
  BranchAndBound bnb(problem, std::move(candidates), node_budget);
  bnb.Run(warm_start);
  SelectionSolution sol = EvaluateSelection(problem, bnb.best_selection());
  sol.nodes = bnb.nodes();
  if (bnb.exhausted()) {
    sol.proof = ProofStatus::kGreedyHeuristic;
    sol.gap = sol.objective - std::min(bnb.open_lower_bound(), sol.objective);
  } else {
    sol.proof = ProofStatus::kOptimal;
    sol.gap = 0.0;
  }
  return sol;
}

SelectionSolution SolveGreedy(const SelectionProblem& problem,
                              std::vector<int> candidates) {
  candidates = NormalizeCandidates(problem, std::move(candidates));
  const PackedCandidates packed(problem.coverage, candidates);
  const SelectionWeights& w = problem.weights;
  SearchState s(packed.patient_words, packed.feature_words);
  std::vector<char> taken(packed.size(), 0);
  std::vector<int> selected;
  while (true) {
    int best = -1;
    double best_delta = 0.0;
    for (int d = 0; d < packed.size(); ++d) {
      if (taken[d]) continue;
      const double delta =
          w.alpha * static_cast<double>(CountNew(packed.feat[d], s.feat)) + w.beta +
          w.gamma * static_cast<double>(CountNew(packed.neg[d], s.neg)) -
          w.lambda * static_cast<double>(CountNew(packed.pos[d], s.pos));
      if (delta < best_delta - kObjectiveTolerance) {
        best = d;
        best_delta = delta;
      }
    }
    if (best < 0) break;
    taken[best] = 1;
    OrInto(s.pos, packed.pos[best]);
    OrInto(s.neg, packed.neg[best]);
    OrInto(s.feat, packed.feat[best]);
    selected.push_back(packed.ids[best]);
  }
  SelectionSolution sol = EvaluateSelection(problem, std::move(selected));
  sol.proof = ProofStatus::kGreedyHeuristic;
  return sol;
}

ArsomResult RunArsom(const BinaryDataset& ds, const MiningConfig& cfg,
                     const SelectionWeights& weights, std::int64_t node_budget) {
  weights.Validate();
  std::vector<Rule> mined = MineRules(ds, cfg);
  if (mined.empty()) {
    throw Error(ErrorKind::kEmptyCandidates,
                "rule mining produced no candidates at support " +
                    std::to_string(cfg.theta_s) + " and confidence " +
                    std::to_string(cfg.theta_c) +
                    "; lower the support or confidence threshold");
  }
  ArsomResult result;
  result.candidates = mined;
  SelectionProblem problem =
      SelectionProblem::Create(BuildCoverage(ds, std::move(mined)), weights, cfg);
  result.weights = problem.weights;
  result.valid = ValidateCandidates(problem);
  const SelectionSolution greedy = SolveGreedy(problem, result.valid);
  result.solution = SolveExact(problem, result.valid, node_budget, &greedy);
  for (const int k : result.solution.selected_rules) {
    result.selected.push_back(result.candidates[k]);
  }
  return result;
}

}  // namespace arsom
