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

// Max-margin training.
//
// Minimizes the regularized latent hinge objective
//
//   J(w) = sum_n (L_n - R_n) + lambda/2 ||w||^2
//   L_n  = max_{y,h} Delta(y, y_n) + f(X_n, h, y)
//   R_n  = max_h f(X_n, h, y_n)
//
// with ||w||^2 taken over [w_instance, w_clique]. Both maxima are exact
// (see inference.h), so J and a subgradient are exact for every w.
// Training is batch subgradient descent from w = 0 with step lengths
// eta_t = eta0 / (1 + t / t0) along the normalized subgradient, keeping the
// best iterate seen.

#ifndef MIMN_LEARNING_H_
#define MIMN_LEARNING_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mimn/dataset.h"
#include "mimn/model.h"
#include "mimn/types.h"

namespace mimn {

struct TrainConfig {
  double lambda = 1.0;
  int max_iters = 300;
  double step0 = 1.0;
  double step_decay = 50.0;
  std::uint64_t seed = 0;
  // Stop when the best objective improved by less than this fraction over
  // the last kStopWindow iterations.
  double stop_tol = 1e-6;
  bool append_bias = false;

  static constexpr int kStopWindow = 20;

  // Throws kInvalidArgument.
  void Validate() const;
};

struct JointFeature {
  std::vector<double> instance_part;  // sum_i h_i x_i
  CliqueIndicator clique_part;

  // [instance_part, dense clique_part]
  std::vector<double> Dense() const;
};

// Throws kInfeasible if (h, y) is infeasible, kDimensionMismatch on ragged
// input.
JointFeature ComputeJointFeature(const PotentialSpec& spec, const Bag& bag,
                                 const InstanceLabeling& h, BagLabel y);

// Bags must be prepared for the model.
double Objective(const Model& model, std::span<const Bag> bags, double lambda);

// Subgradient over [w_instance, w_clique]; bag terms are added in order.
std::vector<double> Subgradient(const Model& model, std::span<const Bag> bags,
                                double lambda);

struct ObjectiveAndSubgradient {
  double objective = 0.0;
  std::vector<double> subgradient;
};

ObjectiveAndSubgradient EvaluateObjective(const Model& model,
                                          std::span<const Bag> bags,
                                          double lambda);

struct TrainResult {
  Model model;
  // objective_trace[t] is J at the t-th iterate; entry 0 is w = 0.
  std::vector<double> objective_trace;
  int best_iteration = 0;
};

using IterationCallback = std::function<void(int iteration, double objective)>;

// Optimizes a model whose scaler and map are already fixed, on prepared bags.
TrainResult TrainPrepared(Model initial, std::span<const Bag> bags,
                          const TrainConfig& config,
                          const IterationCallback& on_iteration = {});

// Fits the scaler on `raw`, maps the bags and trains from w = 0.
// Throws kTraining on a single-class dataset or a non-finite objective.
TrainResult Train(const Dataset& raw, const PotentialSpec& spec,
                  const FeatureMapSpec& map_spec, const TrainConfig& config,
                  const IterationCallback& on_iteration = {});

}  // namespace mimn

#endif  // MIMN_LEARNING_H_
