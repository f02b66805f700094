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

#ifndef MIMN_MODEL_H_
#define MIMN_MODEL_H_

#include <cstddef>
#include <span>
#include <vector>

#include "mimn/features.h"
#include "mimn/types.h"

namespace mimn {

// Learned parameters plus everything needed to turn a raw bag into the
// feature space the weights live in.
struct Model {
  std::vector<double> w_instance;
  CliqueWeights clique;
  PotentialSpec spec = PotentialSpec::Mimn();
  FeatureMapSpec map_spec = FeatureMapSpec::Identity();
  Scaler scaler;
  bool append_bias = false;

  // Length of w_instance implied by the scaler, map and bias flag.
  std::size_t MappedDimension() const;

  // Concatenation [w_instance, clique].
  std::vector<double> Parameters() const;
  void SetParameters(std::span<const double> params);
};

Model ZeroModel(const PotentialSpec& spec, const FeatureMapSpec& map_spec,
                Scaler scaler, bool append_bias);

// Throws kDimensionMismatch if the model's arrays disagree with its specs.
void ValidateModel(const Model& model);

// Scales, maps and (optionally) appends a constant 1 to every instance.
// Throws kDimensionMismatch if the raw dimension differs from the scaler's.
Bag PrepareBag(const Model& model, const Bag& raw);
std::vector<Bag> PrepareBags(const Model& model, std::span<const Bag> raw);

}  // namespace mimn

#endif  // MIMN_MODEL_H_
