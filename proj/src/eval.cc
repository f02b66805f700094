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

#include "mimn/eval.h"

#include <algorithm>
#include <cstdio>
#include <future>
#include <sstream>

#include "mimn/error.h"
#include "mimn/inference.h"
#include "mimn/numeric_format.h"

namespace mimn {

namespace {

int LabelSlot(BagLabel y) { return y == BagLabel::kPositive ? 1 : 0; }

}  // namespace

void Metrics::Add(BagLabel truth, BagLabel predicted) {
  ++confusion[LabelSlot(truth)][LabelSlot(predicted)];
}

int Metrics::total() const {
  return confusion[0][0] + confusion[0][1] + confusion[1][0] + confusion[1][1];
}

double Metrics::accuracy() const {
  const int n = total();
  return n == 0 ? 0.0 : static_cast<double>(correct()) / n;
}

Metrics Evaluate(const Model& model, const Dataset& raw) {
  ValidateModel(model);
  const std::vector<Bag> prepared = PrepareBags(model, raw.bags);
  Metrics metrics;
  for (const Bag& bag : prepared) {
    metrics.Add(bag.label, Predict(model, bag).label);
  }
  return metrics;
}

std::vector<BagLabel> BaselineVote(
    const std::vector<std::vector<double>>& instance_scores, VoteRule rule) {
  if (instance_scores.empty()) {
    throw MimnError(ErrorCode::kInvalidArgument, "no bags to vote on");
  }
  std::vector<BagLabel> labels;
  labels.reserve(instance_scores.size());
  for (const std::vector<double>& scores : instance_scores) {
    if (scores.empty()) {
      throw MimnError(ErrorCode::kInvalidArgument, "cannot vote on an empty bag");
    }
    const std::size_t positives = static_cast<std::size_t>(
        std::count_if(scores.begin(), scores.end(),
                      [](double s) { return s > 0.0; }));
    const bool positive = rule == VoteRule::kAtLeastOne
                              ? positives > 0
                              : 2 * positives > scores.size();
    labels.push_back(positive ? BagLabel::kPositive : BagLabel::kNegative);
  }
  return labels;
}

namespace {

Dataset SplitIntoInstances(const Dataset& raw) {
  Dataset singles;
  for (const Bag& bag : raw.bags) {
    for (std::size_t i = 0; i < bag.size(); ++i) {
      Bag single;
      single.id = bag.id + "#" + std::to_string(i);
      single.label = bag.label;
      single.instances.push_back(bag.instances[i]);
      singles.bags.push_back(std::move(single));
    }
  }
  return singles;
}

}  // namespace

TrainResult TrainInstanceClassifier(const Dataset& raw,
                                    const FeatureMapSpec& map_spec,
                                    const TrainConfig& config) {
  return Train(SplitIntoInstances(raw), PotentialSpec::Mimn(), map_spec,
               config);
}

std::vector<std::vector<double>> InstanceDecisionScores(const Model& model,
                                                        const Dataset& raw) {
  ValidateModel(model);
  const std::vector<Bag> prepared = PrepareBags(model, raw.bags);
  std::vector<std::vector<double>> scores;
  scores.reserve(prepared.size());
  for (const Bag& bag : prepared) {
    std::vector<double> bag_scores;
    bag_scores.reserve(bag.size());
    for (const FeatureVector& x : bag.instances) {
      Bag single;
      single.label = bag.label;
      single.instances.push_back(x);
      bag_scores.push_back(Predict(model, single).margin);
    }
    scores.push_back(std::move(bag_scores));
  }
  return scores;
}

const char* EvalModeName(EvalMode mode) {
  switch (mode) {
    case EvalMode::kMil:
      return "mil";
    case EvalMode::kSvmAtLeastOne:
      return "svm-atleastone";
    case EvalMode::kSvmMajority:
      return "svm-majority";
  }
  return "?";
}

EvalMode ParseEvalMode(const std::string& text) {
  for (EvalMode mode : {EvalMode::kMil, EvalMode::kSvmAtLeastOne,
                        EvalMode::kSvmMajority}) {
    if (text == EvalModeName(mode)) return mode;
  }
  throw MimnError(ErrorCode::kInvalidArgument,
                  "unknown mode '" + text +
                      "' (expected mil, svm-atleastone or svm-majority)");
}

namespace {

Metrics RunFold(const Fold& fold, const PotentialSpec& spec,
                const FeatureMapSpec& map_spec, const TrainConfig& config,
                EvalMode mode) {
  if (mode == EvalMode::kMil) {
    const TrainResult trained = Train(fold.train, spec, map_spec, config);
    return Evaluate(trained.model, fold.test);
  }
  const TrainResult trained =
      TrainInstanceClassifier(fold.train, map_spec, config);
  const std::vector<BagLabel> votes =
      BaselineVote(InstanceDecisionScores(trained.model, fold.test),
                   mode == EvalMode::kSvmAtLeastOne ? VoteRule::kAtLeastOne
                                                    : VoteRule::kMajority);
  Metrics metrics;
  for (std::size_t b = 0; b < votes.size(); ++b) {
    metrics.Add(fold.test.bags[b].label, votes[b]);
  }
  return metrics;
}

}  // namespace

CvResult CrossValidate(const Dataset& dataset, const PotentialSpec& spec,
                       const FeatureMapSpec& map_spec, const TrainConfig& config,
                       int k, std::uint64_t seed, EvalMode mode) {
  config.Validate();
  ValidateDataset(dataset);
  const std::vector<Fold> folds = KFoldSplit(dataset, k, seed);
  std::vector<std::future<Metrics>> pending;
  pending.reserve(folds.size());
  for (const Fold& fold : folds) {
    pending.push_back(std::async(std::launch::async, RunFold, std::cref(fold),
                                 std::cref(spec), std::cref(map_spec),
                                 std::cref(config), mode));
  }
  CvResult result;
  double sum = 0.0;
  for (std::future<Metrics>& f : pending) {
    result.folds.push_back(f.get());
    sum += result.folds.back().accuracy();
  }
  result.mean_accuracy = sum / static_cast<double>(result.folds.size());
  return result;
}

GridResult GridSearch(const Dataset& dataset,
                      const std::vector<PotentialSpec>& spec_grid,
                      const std::vector<double>& lambda_grid,
                      const FeatureMapSpec& map_spec, const TrainConfig& config,
                      int k, std::uint64_t seed, EvalMode mode) {
  if (spec_grid.empty() || lambda_grid.empty()) {
    throw MimnError(ErrorCode::kInvalidArgument, "grid must not be empty");
  }
  GridResult grid;
  for (const PotentialSpec& spec : spec_grid) {
    for (double lambda : lambda_grid) {
      TrainConfig cell_config = config;
      cell_config.lambda = lambda;
      GridCell cell{spec, lambda,
                    CrossValidate(dataset, spec, map_spec, cell_config, k, seed,
                                  mode)};
      if (grid.cells.empty() ||
          cell.result.mean_accuracy >
              grid.cells[grid.best].result.mean_accuracy) {
        grid.best = grid.cells.size();
      }
      grid.cells.push_back(std::move(cell));
    }
  }
  return grid;
}

std::string FormatReportText(const GridResult& grid,
                             const FeatureMapSpec& map_spec) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-14s %-10s %-18s %5s %9s\n", "potential",
                "lambda", "map", "folds", "accuracy");
  out << line;
  for (std::size_t c = 0; c < grid.cells.size(); ++c) {
    const GridCell& cell = grid.cells[c];
    std::snprintf(line, sizeof(line), "%-14s %-10s %-18s %5zu %8.2f%%%s\n",
                  cell.spec.ToString().c_str(),
                  FormatShortest(cell.lambda).c_str(),
                  map_spec.ToString().c_str(), cell.result.folds.size(),
                  100.0 * cell.result.mean_accuracy,
                  c == grid.best ? "  *" : "");
    out << line;
  }
  return out.str();
}

std::string FormatReportCsv(const GridResult& grid,
                            const FeatureMapSpec& map_spec) {
  std::string out = "potential,lambda,map,fold,accuracy\n";
  for (const GridCell& cell : grid.cells) {
    const std::string prefix = cell.spec.ToString() + "," +
                               FormatShortest(cell.lambda) + "," +
                               map_spec.ToString() + ",";
    for (std::size_t f = 0; f < cell.result.folds.size(); ++f) {
      out += prefix + std::to_string(f) + "," +
             FormatShortest(cell.result.folds[f].accuracy()) + "\n";
    }
    out += prefix + "mean," + FormatShortest(cell.result.mean_accuracy) + "\n";
  }
  return out;
}

}  // namespace mimn
