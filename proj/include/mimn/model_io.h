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

// Model persistence as a JSON document:
//
//   {
//     "append_bias": false,
//     "feature_map": {"kind": "identity" | "quadratic" | "homogeneous",
//                     "kernel"?, "n"?, "period"?},
//     "potential": {"kind": "mimn" | "rmimn" | "gmimn", "rho"?, "k_segments"?},
//     "scaler": {"max": [...], "min": [...]},
//     "version": 1,
//     "w_clique": [...],
//     "w_instance": [...]
//   }
//
// Keys are written in sorted order and numbers in their shortest exact
// decimal form, so saving the same model always yields the same bytes and
// loading reproduces every weight bit for bit.

#ifndef MIMN_MODEL_IO_H_
#define MIMN_MODEL_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "mimn/model.h"

namespace mimn {

inline constexpr int kModelFileVersion = 1;

nlohmann::json ModelToJson(const Model& model);
// Throws kModelFormat on missing fields, unknown kinds or inconsistent
// array lengths.
Model ModelFromJson(const nlohmann::json& doc);

std::string SerializeModel(const Model& model);
Model DeserializeModel(std::string_view text);

void SaveModel(const std::filesystem::path& path, const Model& model);
Model LoadModel(const std::filesystem::path& path);

}  // namespace mimn

#endif  // MIMN_MODEL_IO_H_
