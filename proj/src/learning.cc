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

#include "mimn/learning.h"

#include <cmath>
#include <string>

#include "mimn/error.h"
#include "mimn/inference.h"
#include "mimn/potential.h"

namespace mimn {

void TrainConfig::Validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw MimnError(ErrorCode::kInvalidArgument, "lambda must be > 0");
  }
  if (max_iters < 1) {
    throw MimnError(ErrorCode::kInvalidArgument, "max_iters must be >= 1");
  }
  if (!(step0 > 0.0) || !(step_decay > 0.0)) {
    throw MimnError(ErrorCode::kInvalidArgument,
                    "step0 and step_decay must be > 0");
  }
  if (!(stop_tol >= 0.0)) {
    throw MimnError(ErrorCode::kInvalidArgument, "stop_tol must be >= 0");
  }
}

std::vector<double> JointFeature::Dense() const {
  std::vector<double> v = instance_part;
  const std::vector<double> clique = clique_part.Dense();
  v.insert(v.end(), clique.begin(), clique.end());
  return v;
}

JointFeature ComputeJointFeature(const PotentialSpec& spec, const Bag& bag,
                                 const InstanceLabeling& h, BagLabel y) {
  if (h.size() != bag.size() || bag.size() == 0) {
    throw MimnError(ErrorCode::kDimensionMismatch,
                    "labeling length does not match bag size");
  }
  JointFeature feature;
  feature.clique_part = MakeCliqueIndicator(
      spec, h.positive_count(), static_cast<int>(bag.size()), y);
  feature.instance_part.assign(bag.dim(), 0.0);
  for (std::size_t i = 0; i < bag.size(); ++i) {
    const FeatureVector& x = bag.instances[i];
    if (x.size() != bag.dim()) {
      throw MimnError(ErrorCode::kDimensionMismatch, "ragged bag");
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
      feature.instance_part[j] += h[i] > 0 ? x[j] : -x[j];
    }
  }
  return feature;
}

namespace {

// Adds Psi(X, h_plus, y_plus) - Psi(X, h_minus, y_minus) into grad.
void AccumulateFeatureDifference(const Model& model, const Bag& bag,
                                 const InstanceLabeling& h_plus,
                                 BagLabel y_plus,
                                 const InstanceLabeling& h_minus,
                                 BagLabel y_minus, std::vector<double>& grad) {
  const std::size_t d = model.w_instance.size();
  for (std::size_t i = 0; i < bag.size(); ++i) {
    const int diff = h_plus[i] - h_minus[i];  // -2, 0 or 2
    if (diff == 0) continue;
    const FeatureVector& x = bag.instances[i];
    for (std::size_t j = 0; j < d; ++j) grad[j] += diff * x[j];
  }
  const int m = static_cast<int>(bag.size());
  const CliqueIndicator plus =
      MakeCliqueIndicator(model.spec, h_plus.positive_count(), m, y_plus);
  const CliqueIndicator minus =
      MakeCliqueIndicator(model.spec, h_minus.positive_count(), m, y_minus);
  grad[d + plus.index] += 1.0;
  grad[d + minus.index] -= 1.0;
}

ObjectiveAndSubgradient Evaluate(const Model& model, std::span<const Bag> bags,
                                 double lambda, bool want_gradient) {
  ObjectiveAndSubgradient out;
  const std::vector<double> params = model.Parameters();
  if (want_gradient) out.subgradient.assign(params.size(), 0.0);
  double loss = 0.0;
  for (const Bag& bag : bags) {
    if (bag.dim() != model.w_instance.size()) {
      throw MimnError(ErrorCode::kDimensionMismatch,
                      "bag '" + bag.id + "' is not prepared for this model");
    }
    const std::vector<double> potentials = InstanceScores(model, bag);
    const BagLabel y_true = bag.label;
    const BagLabel y_other = Opposite(y_true);
    const InferenceResult same =
        MapLabelingFromPotentials(model.spec, model.clique, potentials, y_true);
    const InferenceResult other = MapLabelingFromPotentials(
        model.spec, model.clique, potentials, y_other);
    // L_n >= R_n always: the (y_true, h_R) candidate is part of L's max, and
    // ties go to it, in which case the bag contributes nothing.
    const bool violated = 1.0 + other.score > same.score;
    if (!violated) continue;
    loss += (1.0 + other.score) - same.score;
    if (want_gradient) {
      AccumulateFeatureDifference(model, bag, other.labeling, y_other,
                                  same.labeling, y_true, out.subgradient);
    }
  }
  double norm2 = 0.0;
  for (double v : params) norm2 += v * v;
  out.objective = loss + 0.5 * lambda * norm2;
  if (want_gradient) {
    for (std::size_t j = 0; j < params.size(); ++j) {
      out.subgradient[j] += lambda * params[j];
    }
  }
  return out;
}

}  // namespace

ObjectiveAndSubgradient EvaluateObjective(const Model& model,
                                          std::span<const Bag> bags,
                                          double lambda) {
  return Evaluate(model, bags, lambda, /*want_gradient=*/true);
}

double Objective(const Model& model, std::span<const Bag> bags, double lambda) {
  return Evaluate(model, bags, lambda, /*want_gradient=*/false).objective;
}

std::vector<double> Subgradient(const Model& model, std::span<const Bag> bags,
                                double lambda) {
  return Evaluate(model, bags, lambda, /*want_gradient=*/true).subgradient;
}

TrainResult TrainPrepared(Model initial, std::span<const Bag> bags,
                          const TrainConfig& config,
                          const IterationCallback& on_iteration) {
  config.Validate();
  ValidateModel(initial);
  if (bags.empty()) {
    throw MimnError(ErrorCode::kTraining, "cannot train on an empty dataset");
  }

  TrainResult result;
  Model model = std::move(initial);
  std::vector<double> params = model.Parameters();
  std::vector<double> best_params = params;
  double best_objective = 0.0;
  std::vector<double> best_trace;

  for (int t = 0;; ++t) {
    const ObjectiveAndSubgradient eval =
        EvaluateObjective(model, bags, config.lambda);
    if (!std::isfinite(eval.objective)) {
      throw MimnError(ErrorCode::kTraining,
                      "non-finite objective at iteration " + std::to_string(t));
    }
    result.objective_trace.push_back(eval.objective);
    if (on_iteration) on_iteration(t, eval.objective);
    if (t == 0 || eval.objective < best_objective) {
      best_objective = eval.objective;
      best_params = params;
      result.best_iteration = t;
    }
    best_trace.push_back(best_objective);

    if (t == config.max_iters) break;
    if (t >= TrainConfig::kStopWindow) {
      const double past = best_trace[t - TrainConfig::kStopWindow];
      if (past - best_objective < config.stop_tol * std::abs(past)) break;
    }

    // Instance and clique weights see features of very different scale, so
    // each block takes its own normalized step of length eta.
    const std::size_t split = model.w_instance.size();
    double norm_instance = 0.0, norm_clique = 0.0;
    for (std::size_t j = 0; j < params.size(); ++j) {
      const double g2 = eval.subgradient[j] * eval.subgradient[j];
      (j < split ? norm_instance : norm_clique) += g2;
    }
    if (norm_instance == 0.0 && norm_clique == 0.0) break;  // stationary point
    const double eta = config.step0 / (1.0 + t / config.step_decay);
    const double step_instance =
        norm_instance > 0.0 ? eta / std::sqrt(norm_instance) : 0.0;
    const double step_clique =
        norm_clique > 0.0 ? eta / std::sqrt(norm_clique) : 0.0;
    for (std::size_t j = 0; j < params.size(); ++j) {
      params[j] -= (j < split ? step_instance : step_clique) *
                   eval.subgradient[j];
    }
    model.SetParameters(params);
  }

  model.SetParameters(best_params);
  result.model = std::move(model);
  return result;
}

TrainResult Train(const Dataset& raw, const PotentialSpec& spec,
                  const FeatureMapSpec& map_spec, const TrainConfig& config,
                  const IterationCallback& on_iteration) {
  config.Validate();
  ValidateDataset(raw);
  if (raw.CountLabel(BagLabel::kPositive) == 0 ||
      raw.CountLabel(BagLabel::kNegative) == 0) {
    throw MimnError(ErrorCode::kTraining,
                    "training data must contain both positive and negative bags");
  }
  Model model =
      ZeroModel(spec, map_spec, FitScaler(raw.bags), config.append_bias);
  const std::vector<Bag> prepared = PrepareBags(model, raw.bags);
  return TrainPrepared(std::move(model), prepared, config, on_iteration);
}

}  // namespace mimn
