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

// On-demand verification suites:
//   - fast MAP inference against exhaustive enumeration,
//   - loss-augmented inference against exhaustive enumeration over (y, h),
//   - the analytic subgradient against central finite differences.
// Every random case is generated from its own 64-bit case seed, which is
// reported on failure and can be replayed alone.

#ifndef MIMN_SELFCHECK_H_
#define MIMN_SELFCHECK_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mimn/inference.h"
#include "mimn/model.h"
#include "mimn/types.h"

namespace mimn {

using MapFunction =
    std::function<InferenceResult(const Model&, const Bag&, BagLabel)>;

struct InferenceCase {
  Model model;
  Bag bag;  // already in model feature space
  BagLabel y = BagLabel::kPositive;
};

// Random potential (Mimn, Rmimn rho in {0.1..1.0}, Gmimn K in {3,5,10}),
// bag size 1..max_bag, dimension 1..4, weights and features uniform in
// [-2, 2] and [-1, 1].
InferenceCase MakeInferenceCase(std::uint64_t case_seed, int max_bag);

struct GradientCase {
  Model model;
  std::vector<Bag> bags;
  double lambda = 1.0;
};

GradientCase MakeGradientCase(std::uint64_t case_seed);

// Smallest score gap between the optimum and any other labeling / label in
// the two maximizations of the objective, over all bags. A positive gap means
// both argmaxes are unique.
double ArgmaxGap(const Model& model, std::span<const Bag> bags);

struct GradientCheck {
  double max_error = 0.0;  // max_j |fd_j - g_j| / max(1, |g_j|)
  bool passed = false;
};

inline constexpr double kFiniteDifferenceStep = 1e-5;
inline constexpr double kGradientTolerance = 1e-4;
// Points whose argmax gap is below this are skipped: a step of 1e-5 along
// one coordinate moves scores by at most ~1e-4 on the generated cases.
inline constexpr double kMinArgmaxGap = 1e-3;

GradientCheck CheckGradient(const GradientCase& c);

struct SelfCheckOptions {
  int cases = 1000;
  int max_bag = 12;
  std::uint64_t seed = 1;
  int gradient_cases = 100;
  // Inference under test; MapLabeling when empty.
  MapFunction map_function;
};

struct SelfCheckReport {
  int inference_passed = 0;
  int inference_total = 0;
  int loss_passed = 0;
  int loss_total = 0;
  int gradient_passed = 0;
  int gradient_total = 0;
  double max_gradient_error = 0.0;
  std::optional<std::uint64_t> failing_seed;
  std::string failure;

  bool ok() const {
    return inference_passed == inference_total && loss_passed == loss_total &&
           gradient_passed == gradient_total;
  }
  std::string Summary() const;
};

// Case seeds are derived from options.seed; the first failure is recorded.
SelfCheckReport RunSelfCheck(const SelfCheckOptions& options);

// Checks a single inference case; empty string on success.
std::string CheckInferenceCase(std::uint64_t case_seed, int max_bag,
                               const MapFunction& map_function);
std::string CheckLossAugmentedCase(std::uint64_t case_seed, int max_bag);

std::uint64_t DeriveCaseSeed(std::uint64_t seed, std::uint64_t index);

}  // namespace mimn

#endif  // MIMN_SELFCHECK_H_
