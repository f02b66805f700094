// Copyright 2026 The MIMN Authors. All Rights Reserved.
//
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

#include "mimn/cli.h"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mimn/dataset.h"
#include "mimn/eval.h"
#include "mimn/inference.h"
#include "mimn/learning.h"
#include "mimn/model_io.h"
#include "mimn/numeric_format.h"
#include "mimn/selfcheck.h"

namespace mimn {

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return kExitUsage;
    case ErrorCode::kTraining:
    case ErrorCode::kInfeasible:
      return kExitTraining;
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kParse:
    case ErrorCode::kIo:
    case ErrorCode::kModelFormat:
      return kExitData;
  }
  return kExitData;
}

namespace {

struct TrainFlags {
  std::string data;
  std::string potential = "mimn";
  std::string map = "linear";
  std::string out;
  std::string log;
  TrainConfig config;
};

struct PredictFlags {
  std::string model;
  std::string data;
  std::string out;
};

struct CvFlags {
  std::string data;
  std::string potential = "mimn";
  std::string map = "linear";
  std::string mode = "mil";
  std::string report_csv;
  int folds = 10;
  std::uint64_t seed = 1;
  std::vector<double> rho_grid;
  std::vector<int> k_grid;
  std::vector<double> lambda_grid;
  TrainConfig config;
};

struct SynthFlags {
  std::vector<int> bags = {100, 100};
  SynthParams params;
  std::uint64_t seed = 1;
  std::string out;
};

struct SelfCheckFlags {
  SelfCheckOptions options;
  std::optional<std::uint64_t> replay;
};

void AddTrainConfigFlags(CLI::App* cmd, TrainConfig& config) {
  cmd->add_option("--lambda", config.lambda, "Regularization weight (> 0)");
  cmd->add_option("--iters", config.max_iters, "Maximum iterations (>= 1)");
  cmd->add_option("--eta0", config.step0, "Initial step length");
  cmd->add_option("--t0", config.step_decay, "Step decay constant");
  cmd->add_option("--stop-tol", config.stop_tol,
                  "Relative improvement threshold over 20 iterations");
  cmd->add_flag("--bias", config.append_bias,
                "Append a constant-1 feature after mapping");
}

// Opens `path` for writing, or returns `fallback` when path is empty.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback)
      : path_(path), fallback_(fallback) {}

  std::ostream& stream() { return path_.empty() ? fallback_ : buffer_; }

  void Commit() {
    if (!path_.empty()) WriteTextFile(path_, buffer_.str());
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ostringstream buffer_;
};

int RunTrain(const TrainFlags& flags, std::ostream& out, std::ostream& err) {
  const PotentialSpec spec = PotentialSpec::Parse(flags.potential);
  const FeatureMapSpec map_spec = FeatureMapSpec::Parse(flags.map);
  flags.config.Validate();
  const Dataset data = ReadMilCsvFile(flags.data);
  ValidateDataset(data);

  std::ostringstream log;
  log << "train potential=" << spec.ToString() << " map=" << map_spec.ToString()
      << " lambda=" << FormatShortest(flags.config.lambda)
      << " bags=" << data.size() << "\n";
  const TrainResult result =
      Train(data, spec, map_spec, flags.config, [&log](int t, double objective) {
        log << "iteration " << t << " objective " << FormatShortest(objective)
            << "\n";
      });
  log << "best iteration " << result.best_iteration << " objective "
      << FormatShortest(result.objective_trace[result.best_iteration]) << "\n";
  err << log.str();
  if (!flags.log.empty()) WriteTextFile(flags.log, log.str());

  OutputTarget target(flags.out, out);
  target.stream() << SerializeModel(result.model);
  target.Commit();
  return kExitOk;
}

int RunPredict(const PredictFlags& flags, std::ostream& out) {
  const Model model = LoadModel(flags.model);
  const Dataset data = ReadMilCsvFile(flags.data);
  const std::vector<Bag> prepared = PrepareBags(model, data.bags);
  OutputTarget target(flags.out, out);
  std::ostream& os = target.stream();
  os << "bag_id,predicted,margin,k_star\n";
  for (const Bag& bag : prepared) {
    const Prediction p = Predict(model, bag);
    os << bag.id << "," << ToInt(p.label) << "," << FormatShortest(p.margin)
       << "," << p.k_star << "\n";
  }
  target.Commit();
  return kExitOk;
}

int RunEval(const PredictFlags& flags, std::ostream& out) {
  const Model model = LoadModel(flags.model);
  const Dataset data = ReadMilCsvFile(flags.data);
  const Metrics m = Evaluate(model, data);
  out << "accuracy " << FormatShortest(m.accuracy()) << " (" << m.correct()
      << "/" << m.total() << ")\n"
      << "confusion true\\pred -1 +1\n"
      << "  -1 " << m.confusion[0][0] << " " << m.confusion[0][1] << "\n"
      << "  +1 " << m.confusion[1][0] << " " << m.confusion[1][1] << "\n";
  return kExitOk;
}

int RunCv(const CvFlags& flags, std::ostream& out, std::ostream& err) {
  if (flags.folds < 2) {
    throw MimnError(ErrorCode::kInvalidArgument, "--folds must be >= 2");
  }
  const FeatureMapSpec map_spec = FeatureMapSpec::Parse(flags.map);
  const EvalMode mode = ParseEvalMode(flags.mode);
  std::vector<PotentialSpec> specs;
  for (double rho : flags.rho_grid) specs.push_back(PotentialSpec::Rmimn(rho));
  for (int k : flags.k_grid) specs.push_back(PotentialSpec::Gmimn(k));
  if (specs.empty()) specs.push_back(PotentialSpec::Parse(flags.potential));
  std::vector<double> lambdas = flags.lambda_grid;
  if (lambdas.empty()) lambdas.push_back(flags.config.lambda);
  for (double lambda : lambdas) {
    TrainConfig probe = flags.config;
    probe.lambda = lambda;
    probe.Validate();
  }

  const Dataset data = ReadMilCsvFile(flags.data);
  ValidateDataset(data);
  err << "cv folds=" << flags.folds << " seed=" << flags.seed
      << " mode=" << EvalModeName(mode) << " cells="
      << specs.size() * lambdas.size() << "\n";
  const GridResult grid = GridSearch(data, specs, lambdas, map_spec,
                                     flags.config, flags.folds, flags.seed, mode);
  out << FormatReportText(grid, map_spec);
  const GridCell& best = grid.winner();
  out << "best " << best.spec.ToString() << " lambda "
      << FormatShortest(best.lambda) << "\n"
      << "mean accuracy " << FormatShortest(best.result.mean_accuracy) << "\n";
  if (!flags.report_csv.empty()) {
    WriteTextFile(flags.report_csv, FormatReportCsv(grid, map_spec));
  }
  return kExitOk;
}

int RunSynth(SynthFlags flags, std::ostream& out) {
  if (flags.bags.size() != 2) {
    throw MimnError(ErrorCode::kInvalidArgument, "--bags expects P,N");
  }
  flags.params.n_pos_bags = flags.bags[0];
  flags.params.n_neg_bags = flags.bags[1];
  const Dataset data = Synthesize(flags.params, flags.seed);
  OutputTarget target(flags.out, out);
  target.stream() << WriteMilCsv(data);
  target.Commit();
  return kExitOk;
}

int RunSelfCheckCommand(const SelfCheckFlags& flags, std::ostream& out) {
  if (flags.replay) {
    const std::uint64_t seed = *flags.replay;
    std::string failure =
        CheckInferenceCase(seed, flags.options.max_bag, nullptr);
    if (failure.empty()) failure = CheckLossAugmentedCase(seed, flags.options.max_bag);
    if (failure.empty()) {
      const GradientCase c = MakeGradientCase(seed);
      if (ArgmaxGap(c.model, c.bags) >= kMinArgmaxGap) {
        const GradientCheck check = CheckGradient(c);
        if (!check.passed) {
          failure = "subgradient mismatch, max relative error " +
                    FormatShortest(check.max_error);
        }
      }
    }
    out << "case " << seed << ": " << (failure.empty() ? "ok" : failure) << "\n";
    return failure.empty() ? kExitOk : kExitSelfCheckFailed;
  }
  const SelfCheckReport report = RunSelfCheck(flags.options);
  out << report.Summary();
  return report.ok() ? kExitOk : kExitSelfCheckFailed;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Multiple-instance learning with cardinality-clique Markov networks",
               "mimn"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  TrainFlags train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a model");
  train_cmd->add_option("--data", train.data, "MIL-CSV training data")->required();
  train_cmd->add_option("--potential", train.potential,
                        "mimn | rmimn:<rho> | gmimn:<K>");
  train_cmd->add_option("--map", train.map,
                        "linear | quad | hom:<intersection|chi2|js>[:n[:L]]");
  train_cmd->add_option("--seed", train.config.seed, "Recorded seed");
  train_cmd->add_option("--out", train.out, "Model file (default: stdout)");
  train_cmd->add_option("--log", train.log, "Also write the training log here");
  AddTrainConfigFlags(train_cmd, train.config);

  PredictFlags predict;
  CLI::App* predict_cmd = app.add_subcommand("predict", "Predict bag labels");
  predict_cmd->add_option("--model", predict.model, "Model file")->required();
  predict_cmd->add_option("--data", predict.data, "MIL-CSV data")->required();
  predict_cmd->add_option("--out", predict.out, "Predictions CSV (default: stdout)");

  PredictFlags eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Bag accuracy of a model");
  eval_cmd->add_option("--model", eval.model, "Model file")->required();
  eval_cmd->add_option("--data", eval.data, "MIL-CSV data")->required();

  CvFlags cv;
  CLI::App* cv_cmd = app.add_subcommand("cv", "k-fold cross-validation and grid search");
  cv_cmd->add_option("--data", cv.data, "MIL-CSV data")->required();
  cv_cmd->add_option("--potential", cv.potential, "Potential when no grid is given");
  cv_cmd->add_option("--map", cv.map, "Feature map");
  cv_cmd->add_option("--folds", cv.folds, "Number of folds");
  cv_cmd->add_option("--seed", cv.seed, "Fold shuffling seed");
  cv_cmd->add_option("--mode", cv.mode, "mil | svm-atleastone | svm-majority");
  cv_cmd->add_option("--rho-grid", cv.rho_grid, "Comma-separated rho values")
      ->delimiter(',');
  cv_cmd->add_option("--k-grid", cv.k_grid, "Comma-separated K values")
      ->delimiter(',');
  cv_cmd->add_option("--lambda-grid", cv.lambda_grid,
                     "Comma-separated lambda values")
      ->delimiter(',');
  cv_cmd->add_option("--report-csv", cv.report_csv, "Write the CSV report here");
  AddTrainConfigFlags(cv_cmd, cv.config);

  SynthFlags synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate synthetic MIL data");
  synth_cmd->add_option("--bags", synth.bags, "Positive,negative bag counts")
      ->delimiter(',')
      ->expected(2);
  synth_cmd->add_option("--bag-size", synth.params.bag_size, "Instances per bag");
  synth_cmd->add_option("--witness", synth.params.witness_rate,
                        "Witness rate in (0,1]");
  synth_cmd->add_option("--dim", synth.params.dim, "Feature dimension");
  synth_cmd->add_option("--sep", synth.params.separation,
                        "Distance between concept means");
  synth_cmd->add_option("--contam", synth.params.neg_contamination,
                        "Concept fraction in negative bags, [0,1)");
  synth_cmd->add_option("--noise", synth.params.noise_sd, "Noise standard deviation");
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("--out", synth.out, "Output file (default: stdout)");

  SelfCheckFlags check;
  CLI::App* check_cmd =
      app.add_subcommand("selfcheck", "Run inference and gradient oracle checks");
  check_cmd->add_option("--cases", check.options.cases, "Random inference cases");
  check_cmd->add_option("--max-bag", check.options.max_bag, "Largest bag size");
  check_cmd->add_option("--seed", check.options.seed, "Base seed");
  check_cmd->add_option("--gradient-cases", check.options.gradient_cases,
                        "Finite-difference points");
  check_cmd->add_option("--replay", check.replay, "Re-run one reported case seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (train_cmd->parsed()) return RunTrain(train, out, err);
    if (predict_cmd->parsed()) return RunPredict(predict, out);
    if (eval_cmd->parsed()) return RunEval(eval, out);
    if (cv_cmd->parsed()) return RunCv(cv, out, err);
    if (synth_cmd->parsed()) return RunSynth(synth, out);
    if (check_cmd->parsed()) return RunSelfCheckCommand(check, out);
  } catch (const MimnError& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  }
  return kExitUsage;
}

}  // namespace mimn
