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

#include "arsom/cli.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "arsom/classifier.h"
#include "arsom/coverage.h"
#include "arsom/cross_validation.h"
#include "arsom/dataset.h"
#include "arsom/error.h"
#include "arsom/json_io.h"
#include "arsom/rule_mining.h"
#include "arsom/rule_selection.h"

namespace arsom {

namespace {

struct DataOptions {
  std::string path;
  std::string label = "label";
  std::string positive = "1";
  bool keep_constant = false;
};

struct MiningOptions {
  double support = 0.01;
  double confidence = 0.7;
  int max_len = 4;
  std::string semantics = "joint";

  MiningConfig ToConfig() const {
    MiningConfig cfg;
    cfg.theta_s = support;
    cfg.theta_c = confidence;
    cfg.theta_l = max_len;
    cfg.support_semantics = ParseSupportSemantics(semantics);
    cfg.Validate();
    return cfg;
  }
};

struct Options {
  std::string config;
  DataOptions data;
  MiningOptions mining;
  SelectionWeights weights;
  std::int64_t node_budget = kDefaultNodeBudget;
  std::string coverage_out;
  std::string model;
  double threshold = kDefaultOperatingThreshold;
  std::string roc_out;
  int repeats = 10;
  int folds = 5;
  std::uint64_t seed = 42;
  int workers = 1;
  bool timing = false;
  std::string plan_out;
};

void AddConfigOption(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config,
                  "TOML-style file of key = value defaults; flags override it");
}

void AddDataOptions(CLI::App* sub, Options& o) {
  sub->add_option("--data", o.data.path, "CSV file with a header row")->required();
  sub->add_option("--label", o.data.label, "name of the label column")
      ->capture_default_str();
  sub->add_option("--positive", o.data.positive, "label value of the positive class")
      ->capture_default_str();
  sub->add_flag("--keep-constant", o.data.keep_constant,
                "keep all-0 and all-1 feature columns");
}

void AddMiningOptions(CLI::App* sub, Options& o) {
  sub->add_option("--support", o.mining.support, "minimum support")
      ->capture_default_str();
  sub->add_option("--confidence", o.mining.confidence, "minimum confidence")
      ->capture_default_str();
  sub->add_option("--max-len", o.mining.max_len, "maximum features per rule")
      ->capture_default_str();
  sub->add_option("--support-semantics", o.mining.semantics,
                  "joint (antecedent and positive) or antecedent")
      ->capture_default_str();
}

void AddSelectionOptions(CLI::App* sub, Options& o) {
  sub->add_option("--alpha", o.weights.alpha, "cost per used feature")
      ->capture_default_str();
  sub->add_option("--beta", o.weights.beta, "cost per selected rule")
      ->capture_default_str();
  sub->add_option("--gamma", o.weights.gamma, "cost per covered negative")
      ->capture_default_str();
  sub->add_option("--lambda", o.weights.lambda, "reward per covered positive")
      ->capture_default_str();
  sub->add_flag("--lambda-large", o.weights.large_lambda,
                "set lambda so that covering any further positive always pays");
  sub->add_option("--node-budget", o.node_budget, "branch-and-bound node limit")
      ->capture_default_str();
}

// Config values become ordinary flags placed ahead of the real ones, so the
// command line wins under the take-last policy.
std::vector<std::string> ConfigArgs(CLI::App* sub, const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw UsageError("cannot open config file '" + path + "'");
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path);
  } catch (const CLI::Error& e) {
    throw UsageError("invalid config file '" + path + "': " + e.what());
  }
  std::vector<std::string> args;
  for (const auto& item : items) {
    if (!item.parents.empty() &&
        !(item.parents.size() == 1 && item.parents[0] == sub->get_name())) {
      continue;
    }
    if (item.name == "++" || item.name == "--") continue;
    std::string name = item.name;
    std::replace(name.begin(), name.end(), '_', '-');
    if (name == "config") throw UsageError("config files cannot nest --config");
    CLI::Option* opt = sub->get_option_no_throw("--" + name);
    if (opt == nullptr) {
      throw UsageError("invalid config: unknown key '" + item.name + "' in '" +
                       path + "'");
    }
    if (opt->get_type_size() == 0) {
      const std::string v = item.inputs.empty() ? "true" : item.inputs.front();
      if (v == "true" || v == "1") {
        args.push_back("--" + name);
      } else if (v != "false" && v != "0") {
        throw UsageError("invalid config: key '" + item.name + "' expects true or false");
      }
      continue;
    }
    if (item.inputs.size() != 1) {
      throw UsageError("invalid config: key '" + item.name + "' expects one value");
    }
    args.push_back("--" + name);
    args.push_back(item.inputs.front());
  }
  return args;
}

BinaryDataset LoadData(const DataOptions& d, std::vector<std::string>* dropped) {
  BinaryDataset ds = LoadCsv(d.path, d.label, d.positive);
  if (d.keep_constant) return ds;
  auto [kept, names] = DropConstantFeatures(ds);
  if (dropped != nullptr) *dropped = std::move(names);
  return kept;
}

void WarnOnLowConfidence(const MiningConfig& cfg, std::ostream& err) {
  if (cfg.theta_c < 0.5) {
    err << "warning: confidence threshold " << cfg.theta_c
        << " is below 0.5; rules may be weaker than the base rate\n";
  }
}

void WriteFile(const std::string& path, const std::string& what,
               const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write " + what + " to '" + path + "'");
  body(f);
}

Json DataSummary(const BinaryDataset& ds, const std::vector<std::string>& dropped) {
  return Json{{"rows", ds.num_rows()},
              {"positive", ds.positive_count()},
              {"negative", ds.negative_count()},
              {"features", ds.num_features()},
              {"dropped_features", dropped}};
}

int RunMine(const Options& o, std::ostream& out, std::ostream& err) {
  const MiningConfig cfg = o.mining.ToConfig();
  WarnOnLowConfidence(cfg, err);
  std::vector<std::string> dropped;
  const BinaryDataset ds = LoadData(o.data, &dropped);
  const std::vector<Rule> rules = MineRules(ds, cfg);
  if (!o.coverage_out.empty()) {
    const CoverageMatrix cov = BuildCoverage(ds, rules);
    WriteFile(o.coverage_out, "coverage", [&](std::ostream& f) { WriteCoverageCsv(cov, f); });
  }
  Json doc;
  doc["config"] = Json{{"mining", ToJson(cfg)}};
  doc["data"] = DataSummary(ds, dropped);
  doc["rules"] = RulesToJson(rules, ds.feature_names());
  out << doc.dump(2) << '\n';
  err << rules.size() << " rules mined\n";
  return kExitOk;
}

int RunSelect(const Options& o, std::ostream& out, std::ostream& err) {
  const MiningConfig cfg = o.mining.ToConfig();
  WarnOnLowConfidence(cfg, err);
  std::vector<std::string> dropped;
  const BinaryDataset ds = LoadData(o.data, &dropped);
  const ArsomResult result = RunArsom(ds, cfg, o.weights, o.node_budget);
  if (!o.coverage_out.empty()) {
    const CoverageMatrix cov = BuildCoverage(ds, result.candidates);
    WriteFile(o.coverage_out, "coverage", [&](std::ostream& f) { WriteCoverageCsv(cov, f); });
  }
  Json doc = SelectionToJson(result, ds.feature_names(), cfg, o.node_budget);
  doc["data"] = DataSummary(ds, dropped);
  out << doc.dump(2) << '\n';
  err << result.selected.size() << " of " << result.valid.size()
      << " candidate rules selected, objective " << result.solution.objective << " ("
      << ProofStatusName(result.solution.proof) << ")\n";
  return kExitOk;
}

int RunEvaluate(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream f(o.model);
  if (!f) throw DataError("cannot open model file '" + o.model + "'");
  Json model_doc;
  try {
    model_doc = Json::parse(f);
  } catch (const Json::exception& e) {
    throw DataError("model file '" + o.model + "' is not valid JSON: " + e.what());
  }
  if (!(o.threshold >= 0.0 && o.threshold <= 1.0)) {
    throw UsageError("threshold must lie in [0, 1]");
  }
  const RuleModel stored = RuleModelFromJson(model_doc);
  // Constant columns stay: the model may reference them by name.
  const BinaryDataset ds = LoadCsv(o.data.path, o.data.label, o.data.positive);
  const RuleModel model = stored.Rebind(ds.feature_names());
  const RocReport report = Roc(model, ds, o.threshold);
  if (!o.roc_out.empty()) {
    WriteFile(o.roc_out, "ROC curve", [&](std::ostream& s) { WriteRocCsv(report, s); });
  }
  Json doc;
  doc["data"] = DataSummary(ds, {});
  doc["roc"] = ToJson(report);
  out << doc.dump(2) << '\n';
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", report.auc);
  err << "AUC " << buf << " over " << ds.num_rows() << " patients\n";
  return kExitOk;
}

int RunCrossValidation(const Options& o, std::ostream& out, std::ostream& err) {
  const MiningConfig cfg = o.mining.ToConfig();
  WarnOnLowConfidence(cfg, err);
  o.weights.Validate();
  std::vector<std::string> dropped;
  const BinaryDataset ds = LoadData(o.data, &dropped);
  const FoldPlan plan = MakeFolds(ds, o.repeats, o.folds, o.seed);
  if (!o.plan_out.empty()) {
    WriteFile(o.plan_out, "fold plan",
              [&](std::ostream& s) { s << ToJson(plan).dump() << '\n'; });
  }
  CvOptions cv;
  cv.node_budget = o.node_budget;
  cv.operating_threshold = o.threshold;
  cv.workers = o.workers;
  cv.record_runtime = o.timing;
  CvReport report = RunCv(ds, cfg, o.weights, plan, cv);
  report.dropped_features = dropped;
  if (!o.roc_out.empty()) {
    WriteFile(o.roc_out, "ROC curves", [&](std::ostream& s) {
      s << "repeat,fold,threshold,sensitivity,false_positive_rate\n";
      s << std::setprecision(17);
      for (const FoldRecord& r : report.records) {
        for (const RocPoint& p : r.roc_points) {
          s << r.repeat << ',' << r.fold << ',' << p.threshold << ',' << p.sensitivity
            << ',' << (1.0 - p.specificity) << '\n';
        }
      }
    });
  }
  out << ToJson(report).dump(2) << '\n';

  char line[160];
  err << "repeat fold    auc  rules  features  proof\n";
  for (const FoldRecord& r : report.records) {
    if (r.ok) {
      std::snprintf(line, sizeof(line), "%6d %4d %6.2f %6d %9d  %s\n", r.repeat, r.fold,
                    r.auc, r.rule_count, r.feature_count, ProofStatusName(r.proof));
    } else {
      std::snprintf(line, sizeof(line), "%6d %4d  failed: %s\n", r.repeat, r.fold,
                    r.failure.c_str());
    }
    err << line;
  }
  std::snprintf(line, sizeof(line),
                "AUC %.2f \xC2\xB1 %.2f | rules %.2f \xC2\xB1 %.2f | features %.2f "
                "\xC2\xB1 %.2f | %d ok, %d failed\n",
                report.auc.mean, report.auc.std, report.rule_count.mean,
                report.rule_count.std, report.feature_count.mean,
                report.feature_count.std, report.completed, report.failed);
  err << line;
  return kExitOk;
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
      return kExitUsage;
    case ErrorKind::kData:
      return kExitData;
    case ErrorKind::kEmptyCandidates:
      return kExitEmptyCandidates;
  }
  return kExitInternal;
}

int ReportError(std::ostream& err, const std::string& kind, const std::string& message,
                int code) {
  err << Json{{"error", Json{{"kind", kind}, {"message", message}}}}.dump() << '\n';
  return code;
}

}  // namespace

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
      return "usage";
    case ErrorKind::kData:
      return "data";
    case ErrorKind::kEmptyCandidates:
      return "empty_candidates";
  }
  return "internal";
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rule-based binary classifier: mine, select, evaluate, cross-validate"};
  app.name(args.empty() ? "arsom" : args[0]);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  CLI::App* mine = app.add_subcommand("mine", "mine candidate class-association rules");
  AddConfigOption(mine, o);
  AddDataOptions(mine, o);
  AddMiningOptions(mine, o);
  mine->add_option("--coverage-out", o.coverage_out, "write the coverage matrix as CSV");

  CLI::App* select = app.add_subcommand("select", "mine, then select an optimal rule set");
  AddConfigOption(select, o);
  AddDataOptions(select, o);
  AddMiningOptions(select, o);
  AddSelectionOptions(select, o);
  select->add_option("--coverage-out", o.coverage_out, "write the coverage matrix as CSV");

  CLI::App* evaluate = app.add_subcommand("evaluate", "ROC and AUC of a model on a dataset");
  AddConfigOption(evaluate, o);
  evaluate->add_option("--model", o.model, "model JSON written by `select`")->required();
  AddDataOptions(evaluate, o);
  evaluate->add_option("--threshold", o.threshold, "operating threshold")
      ->capture_default_str();
  evaluate->add_option("--roc-out", o.roc_out, "write the ROC curve as CSV");

  CLI::App* cv = app.add_subcommand("cv", "repeated stratified k-fold cross-validation");
  AddConfigOption(cv, o);
  AddDataOptions(cv, o);
  AddMiningOptions(cv, o);
  AddSelectionOptions(cv, o);
  cv->add_option("--repeats", o.repeats, "number of repetitions")->capture_default_str();
  cv->add_option("--folds", o.folds, "folds per repetition")->capture_default_str();
  cv->add_option("--seed", o.seed, "fold assignment seed")->capture_default_str();
  cv->add_option("--workers", o.workers, "threads running folds")->capture_default_str();
  cv->add_option("--threshold", o.threshold, "operating threshold")
      ->capture_default_str();
  cv->add_flag("--timing", o.timing, "record per-fold wall-clock time");
  cv->add_option("--plan-out", o.plan_out, "write the fold plan as JSON");
  cv->add_option("--roc-out", o.roc_out, "write every fold's ROC curve as CSV");

  try {
    std::vector<std::string> argv_storage = args;
    if (argv_storage.empty()) argv_storage.push_back("arsom");
    // Splice config-file values in between the subcommand and its flags.
    if (argv_storage.size() >= 2) {
      CLI::App* sub = app.get_subcommand_no_throw(argv_storage[1]);
      if (sub != nullptr) {
        std::vector<std::string> rest;
        std::string config_path;
        for (std::size_t k = 2; k < argv_storage.size(); ++k) {
          const std::string& a = argv_storage[k];
          if (a == "--config" && k + 1 < argv_storage.size()) {
            config_path = argv_storage[++k];
          } else if (a.rfind("--config=", 0) == 0) {
            config_path = a.substr(9);
          } else {
            rest.push_back(a);
          }
        }
        if (!config_path.empty()) {
          std::vector<std::string> rebuilt{argv_storage[0], argv_storage[1]};
          for (auto& a : ConfigArgs(sub, config_path)) rebuilt.push_back(std::move(a));
          rebuilt.insert(rebuilt.end(), rest.begin(), rest.end());
          argv_storage = std::move(rebuilt);
        }
      }
    }
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      return ReportError(err, "usage", e.what(), kExitUsage);
    }
    if (mine->parsed()) return RunMine(o, out, err);
    if (select->parsed()) return RunSelect(o, out, err);
    if (evaluate->parsed()) return RunEvaluate(o, out, err);
    return RunCrossValidation(o, out, err);
  } catch (const Error& e) {
    return ReportError(err, ErrorKindName(e.kind()), e.what(), ExitCodeFor(e.kind()));
  } catch (const std::exception& e) {
    return ReportError(err, "internal", e.what(), kExitInternal);
  }
}

}  // namespace arsom
