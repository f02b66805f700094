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

#include "mimn/potential.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "mimn/error.h"
#include "mimn/numeric_format.h"

namespace mimn {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid argument";
    case ErrorCode::kDimensionMismatch:
      return "dimension mismatch";
    case ErrorCode::kInfeasible:
      return "infeasible";
    case ErrorCode::kParse:
      return "parse error";
    case ErrorCode::kIo:
      return "io error";
    case ErrorCode::kModelFormat:
      return "model format";
    case ErrorCode::kTraining:
      return "training error";
  }
  return "unknown";
}

BagLabel BagLabelFromInt(int value) {
  if (value == 1) return BagLabel::kPositive;
  if (value == -1) return BagLabel::kNegative;
  throw MimnError(ErrorCode::kInvalidArgument,
                  "bag label must be -1 or 1, got " + std::to_string(value));
}

void ValidateBag(const Bag& bag) {
  if (bag.instances.empty()) {
    throw MimnError(ErrorCode::kInvalidArgument,
                    "bag '" + bag.id + "' has no instances");
  }
  const std::size_t d = bag.instances.front().size();
  if (d == 0) {
    throw MimnError(ErrorCode::kInvalidArgument,
                    "bag '" + bag.id + "' has zero-dimensional instances");
  }
  for (const FeatureVector& x : bag.instances) {
    if (x.size() != d) {
      throw MimnError(ErrorCode::kDimensionMismatch,
                      "bag '" + bag.id + "' mixes instance dimensions");
    }
    for (double v : x) {
      if (!std::isfinite(v)) {
        throw MimnError(ErrorCode::kInvalidArgument,
                        "bag '" + bag.id + "' contains a non-finite value");
      }
    }
  }
}

InstanceLabeling::InstanceLabeling(std::vector<int8_t> labels)
    : labels_(std::move(labels)) {
  for (int8_t h : labels_) {
    if (h == 1) {
      ++positive_count_;
    } else if (h != -1) {
      throw MimnError(ErrorCode::kInvalidArgument,
                      "instance labels must be -1 or 1");
    }
  }
}

InstanceLabeling InstanceLabeling::AllNegative(std::size_t m) {
  return InstanceLabeling(std::vector<int8_t>(m, -1));
}

PotentialSpec PotentialSpec::Mimn() { return PotentialSpec(Kind::kMimn, 0, 0); }

PotentialSpec PotentialSpec::Rmimn(double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw MimnError(ErrorCode::kInvalidArgument, "rho must be in (0,1]");
  }
  return PotentialSpec(Kind::kRmimn, rho, 0);
}

PotentialSpec PotentialSpec::Gmimn(int k_segments) {
  if (k_segments < 1) {
    throw MimnError(ErrorCode::kInvalidArgument, "K must be >= 1");
  }
  return PotentialSpec(Kind::kGmimn, 0, k_segments);
}

namespace {

double ParseNumber(std::string_view text, const std::string& what) {
  const std::optional<double> v = ParseDouble(text);
  if (!v || !std::isfinite(*v)) {
    throw MimnError(ErrorCode::kInvalidArgument,
                    "invalid " + what + " '" + std::string(text) + "'");
  }
  return *v;
}

int ParseInt(std::string_view text, const std::string& what) {
  int v = 0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || result.ec != std::errc() ||
      result.ptr != text.data() + text.size()) {
    throw MimnError(ErrorCode::kInvalidArgument,
                    "invalid " + what + " '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

PotentialSpec PotentialSpec::Parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view() : text.substr(colon + 1);
  if (head == "mimn" && colon == std::string_view::npos) return Mimn();
  if (head == "rmimn" && colon != std::string_view::npos) {
    return Rmimn(ParseNumber(arg, "rho"));
  }
  if (head == "gmimn" && colon != std::string_view::npos) {
    return Gmimn(ParseInt(arg, "K"));
  }
  throw MimnError(ErrorCode::kInvalidArgument,
                  "unknown potential '" + std::string(text) +
                      "' (expected mimn, rmimn:<rho> or gmimn:<K>)");
}

std::string PotentialSpec::ToString() const {
  switch (kind_) {
    case Kind::kMimn:
      return "mimn";
    case Kind::kRmimn:
      return "rmimn:" + FormatShortest(rho_);
    case Kind::kGmimn:
      return "gmimn:" + std::to_string(k_segments_);
  }
  return "?";
}

std::size_t PotentialSpec::num_clique_weights() const {
  return kind_ == Kind::kGmimn ? 2 * static_cast<std::size_t>(k_segments_) : 2;
}

double CliqueValue::value() const {
  if (!finite_) throw MimnError(ErrorCode::kInfeasible, "infeasible clique value");
  return finite_->value;
}

int CliqueValue::weight_index() const {
  if (!finite_) throw MimnError(ErrorCode::kInfeasible, "infeasible clique value");
  return finite_->weight_index;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

double InstancePotential(std::span<const double> w, std::span<const double> x,
                         int h) {
  if (w.size() != x.size()) {
    throw MimnError(ErrorCode::kDimensionMismatch,
                    "weight dimension " + std::to_string(w.size()) +
                        " != feature dimension " + std::to_string(x.size()));
  }
  const double p = Dot(w, x);
  return h > 0 ? p : -p;
}

std::optional<int> CliqueWeightIndex(const PotentialSpec& spec, int m_plus,
                                     int m, BagLabel y) {
  if (m < 1 || m_plus < 0 || m_plus > m) {
    throw MimnError(ErrorCode::kInvalidArgument,
                    "positive count " + std::to_string(m_plus) +
                        " out of range for bag size " + std::to_string(m));
  }
  const bool positive = y == BagLabel::kPositive;
  switch (spec.kind()) {
    case PotentialSpec::Kind::kMimn:
      if (positive) return m_plus == 0 ? std::nullopt : std::optional<int>(0);
      return m_plus == 0 ? std::optional<int>(1) : std::nullopt;
    case PotentialSpec::Kind::kRmimn: {
      // Smallest count whose fraction reaches rho; the tolerance keeps
      // rational boundaries such as rho = 0.3, m = 10 exact.
      const int k_min =
          static_cast<int>(std::ceil(spec.rho() * m - 1e-9));
      if (positive) return m_plus >= k_min ? std::optional<int>(0) : std::nullopt;
      return m_plus < k_min ? std::optional<int>(1) : std::nullopt;
    }
    case PotentialSpec::Kind::kGmimn: {
      const int K = spec.k_segments();
      const double scaled = static_cast<double>(K) * m_plus / m;
      if (positive) {
        if (m_plus == 0) return std::nullopt;
        // (k-1)/K < m+/m <= k/K
        int k = static_cast<int>(std::ceil(scaled - 1e-12));
        k = std::clamp(k, 1, K);
        return k - 1;
      }
      if (m_plus == m) return std::nullopt;
      // (k-1)/K <= m+/m < k/K
      int k = static_cast<int>(std::floor(scaled + 1e-12)) + 1;
      k = std::clamp(k, 1, K);
      return K + k - 1;
    }
  }
  return std::nullopt;
}

CliqueValue EvaluateClique(const PotentialSpec& spec,
                           const CliqueWeights& weights, int m_plus, int m,
                           BagLabel y) {
  if (weights.size() != spec.num_clique_weights()) {
    throw MimnError(ErrorCode::kDimensionMismatch,
                    "clique weight count does not match potential " +
                        spec.ToString());
  }
  const std::optional<int> index = CliqueWeightIndex(spec, m_plus, m, y);
  if (!index) return CliqueValue::Infeasible();
  return CliqueValue::Finite(weights.values[*index], *index);
}

std::vector<int> FeasibleCounts(const PotentialSpec& spec, int m, BagLabel y) {
  std::vector<int> counts;
  for (int k = 0; k <= m; ++k) {
    if (CliqueWeightIndex(spec, k, m, y)) counts.push_back(k);
  }
  if (counts.empty()) {
    throw MimnError(ErrorCode::kInfeasible,
                    "no feasible positive count for " + spec.ToString() +
                        " with bag size " + std::to_string(m));
  }
  return counts;
}

CliqueIndicator MakeCliqueIndicator(const PotentialSpec& spec, int m_plus,
                                    int m, BagLabel y) {
  const std::optional<int> index = CliqueWeightIndex(spec, m_plus, m, y);
  if (!index) {
    throw MimnError(ErrorCode::kInfeasible,
                    "positive count " + std::to_string(m_plus) + " of " +
                        std::to_string(m) + " is infeasible for label " +
                        std::to_string(ToInt(y)) + " under " + spec.ToString());
  }
  return CliqueIndicator{spec.num_clique_weights(), *index};
}

CliqueValue ScoreFromPotentials(const PotentialSpec& spec,
                                const CliqueWeights& weights,
                                std::span<const double> potentials,
                                const InstanceLabeling& h, BagLabel y) {
  if (h.size() != potentials.size()) {
    throw MimnError(ErrorCode::kDimensionMismatch,
                    "labeling length " + std::to_string(h.size()) +
                        " != bag size " + std::to_string(potentials.size()));
  }
  const CliqueValue clique =
      EvaluateClique(spec, weights, h.positive_count(),
                     static_cast<int>(potentials.size()), y);
  if (!clique.feasible()) return clique;
  double sum = 0.0;
  for (std::size_t i = 0; i < potentials.size(); ++i) {
    sum += h[i] > 0 ? potentials[i] : -potentials[i];
  }
  return CliqueValue::Finite(clique.value() + sum, clique.weight_index());
}

CliqueValue Score(const Model& model, const Bag& bag, const InstanceLabeling& h,
                  BagLabel y) {
  if (h.size() != bag.size()) {
    throw MimnError(ErrorCode::kDimensionMismatch,
                    "labeling length " + std::to_string(h.size()) +
                        " != bag size " + std::to_string(bag.size()));
  }
  std::vector<double> potentials(bag.size());
  for (std::size_t i = 0; i < bag.size(); ++i) {
    potentials[i] = InstancePotential(model.w_instance, bag.instances[i], 1);
  }
  return ScoreFromPotentials(model.spec, model.clique, potentials, h, y);
}

}  // namespace mimn
