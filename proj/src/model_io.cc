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

#include "mimn/model_io.h"

#include <fstream>
#include <sstream>

#include "mimn/dataset.h"
#include "mimn/error.h"

namespace mimn {

using nlohmann::json;

namespace {

[[noreturn]] void FormatFail(const std::string& what) {
  throw MimnError(ErrorCode::kModelFormat, what);
}

json PotentialToJson(const PotentialSpec& spec) {
  switch (spec.kind()) {
    case PotentialSpec::Kind::kMimn:
      return {{"kind", "mimn"}};
    case PotentialSpec::Kind::kRmimn:
      return {{"kind", "rmimn"}, {"rho", spec.rho()}};
    case PotentialSpec::Kind::kGmimn:
      return {{"kind", "gmimn"}, {"k_segments", spec.k_segments()}};
  }
  return {};
}

json FeatureMapToJson(const FeatureMapSpec& spec) {
  switch (spec.kind()) {
    case FeatureMapSpec::Kind::kIdentity:
      return {{"kind", "identity"}};
    case FeatureMapSpec::Kind::kQuadratic:
      return {{"kind", "quadratic"}};
    case FeatureMapSpec::Kind::kHomogeneous:
      return {{"kind", "homogeneous"},
              {"kernel", HomogeneousKernelName(spec.kernel())},
              {"n", spec.order()},
              {"period", spec.period()}};
  }
  return {};
}

const json& Field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    FormatFail(std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

double NumberField(const json& obj, const char* key) {
  const json& v = Field(obj, key);
  if (!v.is_number()) FormatFail(std::string("field '") + key + "' is not a number");
  return v.get<double>();
}

std::vector<double> NumberArray(const json& obj, const char* key) {
  const json& v = Field(obj, key);
  if (!v.is_array()) FormatFail(std::string("field '") + key + "' is not an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) {
      FormatFail(std::string("field '") + key + "' has a non-numeric entry");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

PotentialSpec PotentialFromJson(const json& obj) {
  const json& kind = Field(obj, "kind");
  if (kind == "mimn") return PotentialSpec::Mimn();
  try {
    if (kind == "rmimn") return PotentialSpec::Rmimn(NumberField(obj, "rho"));
    if (kind == "gmimn") {
      const json& k = Field(obj, "k_segments");
      if (!k.is_number_integer()) FormatFail("k_segments must be an integer");
      return PotentialSpec::Gmimn(k.get<int>());
    }
  } catch (const MimnError& e) {
    if (e.code() == ErrorCode::kModelFormat) throw;
    FormatFail(std::string("invalid potential: ") + e.what());
  }
  FormatFail("unsupported potential");
}

FeatureMapSpec FeatureMapFromJson(const json& obj) {
  const json& kind = Field(obj, "kind");
  if (kind == "identity") return FeatureMapSpec::Identity();
  if (kind == "quadratic") return FeatureMapSpec::Quadratic();
  if (kind == "homogeneous") {
    const json& kernel = Field(obj, "kernel");
    const json& n = Field(obj, "n");
    if (!kernel.is_string() || !n.is_number_integer()) {
      FormatFail("unsupported feature_map");
    }
    try {
      return FeatureMapSpec::Homogeneous(
          ParseHomogeneousKernel(kernel.get<std::string>()), n.get<int>(),
          NumberField(obj, "period"));
    } catch (const MimnError& e) {
      if (e.code() == ErrorCode::kModelFormat) throw;
      FormatFail("unsupported feature_map");
    }
  }
  FormatFail("unsupported feature_map");
}

}  // namespace

json ModelToJson(const Model& model) {
  ValidateModel(model);
  json doc;
  doc["version"] = kModelFileVersion;
  doc["potential"] = PotentialToJson(model.spec);
  doc["feature_map"] = FeatureMapToJson(model.map_spec);
  doc["scaler"] = {{"min", model.scaler.min}, {"max", model.scaler.max}};
  doc["w_instance"] = model.w_instance;
  doc["w_clique"] = model.clique.values;
  doc["append_bias"] = model.append_bias;
  return doc;
}

Model ModelFromJson(const json& doc) {
  if (!doc.is_object()) FormatFail("model file is not a JSON object");
  const json& version = Field(doc, "version");
  if (!version.is_number_integer() || version.get<int>() != kModelFileVersion) {
    FormatFail("unsupported model file version");
  }
  Model model;
  model.spec = PotentialFromJson(Field(doc, "potential"));
  model.map_spec = FeatureMapFromJson(Field(doc, "feature_map"));
  const json& scaler = Field(doc, "scaler");
  model.scaler.min = NumberArray(scaler, "min");
  model.scaler.max = NumberArray(scaler, "max");
  model.w_instance = NumberArray(doc, "w_instance");
  model.clique.values = NumberArray(doc, "w_clique");
  const json& bias = Field(doc, "append_bias");
  if (!bias.is_boolean()) FormatFail("append_bias must be a boolean");
  model.append_bias = bias.get<bool>();
  try {
    ValidateModel(model);
  } catch (const MimnError& e) {
    FormatFail(e.what());
  }
  return model;
}

std::string SerializeModel(const Model& model) {
  return ModelToJson(model).dump(2) + "\n";
}

Model DeserializeModel(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    FormatFail(std::string("model file is not valid JSON: ") + e.what());
  }
  return ModelFromJson(doc);
}

void SaveModel(const std::filesystem::path& path, const Model& model) {
  WriteTextFile(path, SerializeModel(model));
}

Model LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MimnError(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return DeserializeModel(buffer.str());
}

}  // namespace mimn
