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

// Exact MAP inference over instance labels for cardinality cliques.
//
// For a fixed bag label the best labeling with k positives takes the k
// instances with the largest gain 2<w, x_i>, so MAP reduces to one sort and
// a scan over the feasible counts: O(m log m) after the m dot products.
//
// Determinism rules:
//   - equal gains keep ascending instance index,
//   - equal totals over k keep the smallest k,
//   - Predict breaks F(+1) == F(-1) towards -1,
//   - LossAugmented breaks ties towards the true label.
// The reported score is the joint score of the returned labeling, summed in
// instance order exactly as Score() does.

#ifndef MIMN_INFERENCE_H_
#define MIMN_INFERENCE_H_

#include <span>
#include <vector>

#include "mimn/model.h"
#include "mimn/types.h"

namespace mimn {

struct InferenceResult {
  InstanceLabeling labeling;
  double score = 0.0;
  int k_star = 0;
};

// Inference on precomputed instance scores p_i = <w, x_i>.
InferenceResult MapLabelingFromPotentials(const PotentialSpec& spec,
                                          const CliqueWeights& weights,
                                          std::span<const double> potentials,
                                          BagLabel y);

// Bag must already be prepared (scaled and mapped) for the model.
InferenceResult MapLabeling(const Model& model, const Bag& bag, BagLabel y);

struct Prediction {
  BagLabel label = BagLabel::kNegative;
  InstanceLabeling labeling;  // labeling for the predicted label
  int k_star = 0;
  double margin = 0.0;  // F(+1) - F(-1)
  double score_positive = 0.0;
  double score_negative = 0.0;
};

Prediction Predict(const Model& model, const Bag& bag);

struct LossAugmentedResult {
  BagLabel label = BagLabel::kNegative;
  InstanceLabeling labeling;
  double value = 0.0;  // Delta(label, y_true) + score
};

LossAugmentedResult LossAugmented(const Model& model, const Bag& bag,
                                  BagLabel y_true);

// Per-bag instance scores <w, x_i>.
std::vector<double> InstanceScores(const Model& model, const Bag& bag);

// Test oracles: exhaustive enumeration over all 2^m labelings.
// Throw kInvalidArgument when m > kBruteForceMaxBag.
inline constexpr int kBruteForceMaxBag = 20;

InferenceResult BruteForceMap(const Model& model, const Bag& bag, BagLabel y);

LossAugmentedResult BruteForceLossAugmented(const Model& model, const Bag& bag,
                                            BagLabel y_true);

}  // namespace mimn

#endif  // MIMN_INFERENCE_H_
