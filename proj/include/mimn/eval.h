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

// Bag-level evaluation: metrics, k-fold cross-validation, grid search over
// potentials and lambda, and the instance-classifier voting baselines.

#ifndef MIMN_EVAL_H_
#define MIMN_EVAL_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mimn/dataset.h"
#include "mimn/features.h"
#include "mimn/learning.h"
#include "mimn/model.h"
#include "mimn/types.h"

namespace mimn {

struct Metrics {
  // confusion[t][p]: t, p index 0 for -1 and 1 for +1 (true, predicted).
  std::array<std::array<int, 2>, 2> confusion{};

  void Add(BagLabel truth, BagLabel predicted);
  int total() const;
  int correct() const { return confusion[0][0] + confusion[1][1]; }
  // 0 for an empty set.
  double accuracy() const;
};

// Raw (unprepared) bags; each is scaled and mapped with the model's
// pipeline before prediction.
Metrics Evaluate(const Model& model, const Dataset& raw);

enum class VoteRule { kAtLeastOne, kMajority };

// at_least_one: +1 iff any score > 0. majority: +1 iff strictly more than
// half of the scores are > 0. Throws kInvalidArgument on an empty list or an
// empty bag.
std::vector<BagLabel> BaselineVote(
    const std::vector<std::vector<double>>& instance_scores, VoteRule rule);

// Instance classifier for the voting baselines: every instance becomes a
// single-instance bag carrying its bag's label, trained as Mimn.
TrainResult TrainInstanceClassifier(const Dataset& raw,
                                    const FeatureMapSpec& map_spec,
                                    const TrainConfig& config);

// Per-instance decision values F(+1) - F(-1) of an instance classifier.
std::vector<std::vector<double>> InstanceDecisionScores(const Model& model,
                                                        const Dataset& raw);

enum class EvalMode { kMil, kSvmAtLeastOne, kSvmMajority };

const char* EvalModeName(EvalMode mode);
EvalMode ParseEvalMode(const std::string& text);

struct CvResult {
  double mean_accuracy = 0.0;
  std::vector<Metrics> folds;
};

// For each fold: fit the scaler on train only, map, train, evaluate on test.
// Folds are trained concurrently; results are stored in fold order.
CvResult CrossValidate(const Dataset& dataset, const PotentialSpec& spec,
                       const FeatureMapSpec& map_spec, const TrainConfig& config,
                       int k, std::uint64_t seed,
                       EvalMode mode = EvalMode::kMil);

struct GridCell {
  PotentialSpec spec;
  double lambda = 1.0;
  CvResult result;
};

struct GridResult {
  std::vector<GridCell> cells;  // spec-major, lambda-minor
  std::size_t best = 0;         // first cell with the highest mean accuracy

  const GridCell& winner() const { return cells.at(best); }
};

// Throws kInvalidArgument on an empty grid.
GridResult GridSearch(const Dataset& dataset,
                      const std::vector<PotentialSpec>& spec_grid,
                      const std::vector<double>& lambda_grid,
                      const FeatureMapSpec& map_spec, const TrainConfig& config,
                      int k, std::uint64_t seed,
                      EvalMode mode = EvalMode::kMil);

inline const std::vector<double> kDefaultLambdaGrid = {100, 10, 1, 0.1, 0.01};

// Aligned plain-text table, one row per grid cell, winner marked.
std::string FormatReportText(const GridResult& grid,
                             const FeatureMapSpec& map_spec);

// Columns: potential,lambda,map,fold,accuracy. Each cell contributes one row
// per fold plus a row with fold "mean".
std::string FormatReportCsv(const GridResult& grid,
                            const FeatureMapSpec& map_spec);

}  // namespace mimn

#endif  // MIMN_EVAL_H_
