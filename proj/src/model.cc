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

#include "mimn/model.h"

#include <algorithm>
#include <string>

#include "mimn/error.h"

namespace mimn {

std::size_t Model::MappedDimension() const {
  return map_spec.OutputDimension(scaler.dim()) + (append_bias ? 1 : 0);
}

std::vector<double> Model::Parameters() const {
  std::vector<double> params = w_instance;
  params.insert(params.end(), clique.values.begin(), clique.values.end());
  return params;
}

void Model::SetParameters(std::span<const double> params) {
  if (params.size() != w_instance.size() + clique.size()) {
    throw MimnError(ErrorCode::kDimensionMismatch,
                    "parameter vector has the wrong length");
  }
  std::copy(params.begin(), params.begin() + w_instance.size(),
            w_instance.begin());
  std::copy(params.begin() + w_instance.size(), params.end(),
            clique.values.begin());
}

Model ZeroModel(const PotentialSpec& spec, const FeatureMapSpec& map_spec,
                Scaler scaler, bool append_bias) {
  Model model;
  model.spec = spec;
  model.map_spec = map_spec;
  model.scaler = std::move(scaler);
  model.append_bias = append_bias;
  model.w_instance.assign(model.MappedDimension(), 0.0);
  model.clique = CliqueWeights::Zero(spec);
  return model;
}

void ValidateModel(const Model& model) {
  if (model.scaler.min.size() != model.scaler.max.size()) {
    throw MimnError(ErrorCode::kDimensionMismatch,
                    "scaler min and max have different lengths");
  }
  if (model.w_instance.size() != model.MappedDimension()) {
    throw MimnError(ErrorCode::kDimensionMismatch,
                    "w_instance has length " +
                        std::to_string(model.w_instance.size()) +
                        ", expected " + std::to_string(model.MappedDimension()));
  }
  if (model.clique.size() != model.spec.num_clique_weights()) {
    throw MimnError(ErrorCode::kDimensionMismatch,
                    "w_clique has length " + std::to_string(model.clique.size()) +
                        ", expected " +
                        std::to_string(model.spec.num_clique_weights()));
  }
}

namespace {

Bag PrepareWith(const Model& model, const FeatureMap& map, const Bag& raw) {
  ValidateBag(raw);
  if (raw.dim() != model.scaler.dim()) {
    throw MimnError(ErrorCode::kDimensionMismatch,
                    "bag '" + raw.id + "' has dimension " +
                        std::to_string(raw.dim()) + ", model expects " +
                        std::to_string(model.scaler.dim()));
  }
  Bag out;
  out.id = raw.id;
  out.label = raw.label;
  out.instances.reserve(raw.size());
  for (const FeatureVector& x : raw.instances) {
    FeatureVector mapped = map.Apply(ApplyScaler(model.scaler, x));
    if (model.append_bias) mapped.push_back(1.0);
    out.instances.push_back(std::move(mapped));
  }
  return out;
}

}  // namespace

Bag PrepareBag(const Model& model, const Bag& raw) {
  return PrepareWith(model, FeatureMap(model.map_spec), raw);
}

std::vector<Bag> PrepareBags(const Model& model, std::span<const Bag> raw) {
  const FeatureMap map(model.map_spec);
  std::vector<Bag> out;
  out.reserve(raw.size());
  for (const Bag& bag : raw) out.push_back(PrepareWith(model, map, bag));
  return out;
}

}  // namespace mimn
