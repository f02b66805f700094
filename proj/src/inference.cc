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

#include "mimn/inference.h"

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mimn/error.h"
#include "mimn/potential.h"

namespace mimn {

InferenceResult MapLabelingFromPotentials(const PotentialSpec& spec,
                                          const CliqueWeights& weights,
                                          std::span<const double> potentials,
                                          BagLabel y) {
  const int m = static_cast<int>(potentials.size());
  if (m < 1) throw MimnError(ErrorCode::kInvalidArgument, "empty bag");
  if (weights.size() != spec.num_clique_weights()) {
    throw MimnError(ErrorCode::kDimensionMismatch,
                    "clique weight count does not match potential " +
                        spec.ToString());
  }

  // Gain of flipping instance i from -1 to +1 is 2 p_i; ordering by p_i is
  // the same ordering. Equal gains keep ascending index, which makes the
  // order total, so a plain sort on contiguous (p, i) keys is deterministic.
  std::vector<std::pair<double, int>> keyed(m);
  for (int i = 0; i < m; ++i) keyed[i] = {potentials[i], i};
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  });
  std::vector<int> order(m);
  for (int r = 0; r < m; ++r) order[r] = keyed[r].second;

  double base = 0.0;
  for (double p : potentials) base -= p;

  int best_k = -1;
  double best_total = 0.0;
  double prefix = 0.0;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) prefix += 2.0 * potentials[order[k - 1]];
    const std::optional<int> index = CliqueWeightIndex(spec, k, m, y);
    if (!index) continue;
    const double total = base + prefix + weights.values[*index];
    if (best_k < 0 || total > best_total) {
      best_k = k;
      best_total = total;
    }
  }
  if (best_k < 0) {
    throw MimnError(ErrorCode::kInfeasible,
                    "no feasible labeling under " + spec.ToString());
  }

  std::vector<int8_t> labels(m, -1);
  for (int r = 0; r < best_k; ++r) labels[order[r]] = 1;
  InferenceResult result;
  result.labeling = InstanceLabeling(std::move(labels));
  result.k_star = best_k;
  result.score = ScoreFromPotentials(spec, weights, potentials,
                                     result.labeling, y)
                     .value();
  return result;
}

std::vector<double> InstanceScores(const Model& model, const Bag& bag) {
  std::vector<double> potentials(bag.size());
  for (std::size_t i = 0; i < bag.size(); ++i) {
    potentials[i] = InstancePotential(model.w_instance, bag.instances[i], 1);
  }
  return potentials;
}

InferenceResult MapLabeling(const Model& model, const Bag& bag, BagLabel y) {
  const std::vector<double> potentials = InstanceScores(model, bag);
  return MapLabelingFromPotentials(model.spec, model.clique, potentials, y);
}

Prediction Predict(const Model& model, const Bag& bag) {
  const std::vector<double> potentials = InstanceScores(model, bag);
  InferenceResult pos = MapLabelingFromPotentials(
      model.spec, model.clique, potentials, BagLabel::kPositive);
  InferenceResult neg = MapLabelingFromPotentials(
      model.spec, model.clique, potentials, BagLabel::kNegative);
  Prediction prediction;
  prediction.score_positive = pos.score;
  prediction.score_negative = neg.score;
  prediction.margin = pos.score - neg.score;
  InferenceResult& chosen = pos.score > neg.score ? pos : neg;
  prediction.label =
      pos.score > neg.score ? BagLabel::kPositive : BagLabel::kNegative;
  prediction.k_star = chosen.k_star;
  prediction.labeling = std::move(chosen.labeling);
  return prediction;
}

LossAugmentedResult LossAugmented(const Model& model, const Bag& bag,
                                  BagLabel y_true) {
  const std::vector<double> potentials = InstanceScores(model, bag);
  InferenceResult same =
      MapLabelingFromPotentials(model.spec, model.clique, potentials, y_true);
  const BagLabel y_other = Opposite(y_true);
  InferenceResult other =
      MapLabelingFromPotentials(model.spec, model.clique, potentials, y_other);
  const double other_value = 1.0 + other.score;
  LossAugmentedResult result;
  if (other_value > same.score) {
    result.label = y_other;
    result.labeling = std::move(other.labeling);
    result.value = other_value;
  } else {
    result.label = y_true;
    result.labeling = std::move(same.labeling);
    result.value = same.score;
  }
  return result;
}

namespace {

void CheckBruteForceSize(const Bag& bag) {
  if (bag.size() < 1 || bag.size() > kBruteForceMaxBag) {
    throw MimnError(ErrorCode::kInvalidArgument,
                    "brute force inference supports 1.." +
                        std::to_string(kBruteForceMaxBag) +
                        " instances, bag has " + std::to_string(bag.size()));
  }
}

InstanceLabeling LabelingFromMask(std::uint32_t mask, std::size_t m) {
  std::vector<int8_t> labels(m);
  for (std::size_t i = 0; i < m; ++i) labels[i] = (mask >> i) & 1u ? 1 : -1;
  return InstanceLabeling(std::move(labels));
}

}  // namespace

InferenceResult BruteForceMap(const Model& model, const Bag& bag, BagLabel y) {
  CheckBruteForceSize(bag);
  const std::vector<double> potentials = InstanceScores(model, bag);
  const std::size_t m = bag.size();
  bool found = false;
  InferenceResult best;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    InstanceLabeling h = LabelingFromMask(mask, m);
    const CliqueValue s =
        ScoreFromPotentials(model.spec, model.clique, potentials, h, y);
    if (!s.feasible()) continue;
    if (!found || s.value() > best.score) {
      found = true;
      best.score = s.value();
      best.k_star = h.positive_count();
      best.labeling = std::move(h);
    }
  }
  if (!found) {
    throw MimnError(ErrorCode::kInfeasible,
                    "no feasible labeling under " + model.spec.ToString());
  }
  return best;
}

LossAugmentedResult BruteForceLossAugmented(const Model& model, const Bag& bag,
                                            BagLabel y_true) {
  CheckBruteForceSize(bag);
  const std::vector<double> potentials = InstanceScores(model, bag);
  const std::size_t m = bag.size();
  bool found = false;
  LossAugmentedResult best;
  for (BagLabel y : {y_true, Opposite(y_true)}) {
    const double delta = y == y_true ? 0.0 : 1.0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      InstanceLabeling h = LabelingFromMask(mask, m);
      const CliqueValue s =
          ScoreFromPotentials(model.spec, model.clique, potentials, h, y);
      if (!s.feasible()) continue;
      const double value = delta + s.value();
      if (!found || value > best.value) {
        found = true;
        best.value = value;
        best.label = y;
        best.labeling = std::move(h);
      }
    }
  }
  return best;
}

}  // namespace mimn
