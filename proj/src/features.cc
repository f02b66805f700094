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

#include "mimn/features.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "mimn/error.h"
#include "mimn/numeric_format.h"

namespace mimn {

Scaler FitScaler(std::span<const Bag> bags) {
  Scaler scaler;
  for (const Bag& bag : bags) {
    for (const FeatureVector& x : bag.instances) {
      if (scaler.min.empty()) {
        scaler.min = x;
        scaler.max = x;
        continue;
      }
      if (x.size() != scaler.dim()) {
        throw MimnError(ErrorCode::kDimensionMismatch,
                        "cannot fit scaler: mixed instance dimensions");
      }
      for (std::size_t j = 0; j < x.size(); ++j) {
        scaler.min[j] = std::min(scaler.min[j], x[j]);
        scaler.max[j] = std::max(scaler.max[j], x[j]);
      }
    }
  }
  if (scaler.min.empty()) {
    throw MimnError(ErrorCode::kInvalidArgument,
                    "cannot fit scaler on an empty dataset");
  }
  return scaler;
}

FeatureVector ApplyScaler(const Scaler& scaler, std::span<const double> x) {
  if (x.size() != scaler.dim()) {
    throw MimnError(ErrorCode::kDimensionMismatch,
                    "feature dimension " + std::to_string(x.size()) +
                        " != scaler dimension " + std::to_string(scaler.dim()));
  }
  FeatureVector out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double range = scaler.max[j] - scaler.min[j];
    if (!(range > 0.0)) {
      out[j] = 0.0;
      continue;
    }
    out[j] = std::clamp((x[j] - scaler.min[j]) / range, 0.0, 1.0);
  }
  return out;
}

const char* HomogeneousKernelName(HomogeneousKernel kernel) {
  switch (kernel) {
    case HomogeneousKernel::kIntersection:
      return "intersection";
    case HomogeneousKernel::kChi2:
      return "chi2";
    case HomogeneousKernel::kJensenShannon:
      return "js";
  }
  return "?";
}

FeatureMapSpec FeatureMapSpec::Identity() { return FeatureMapSpec(); }

FeatureMapSpec FeatureMapSpec::Quadratic() {
  FeatureMapSpec spec;
  spec.kind_ = Kind::kQuadratic;
  return spec;
}

FeatureMapSpec FeatureMapSpec::Homogeneous(HomogeneousKernel kernel, int order,
                                           double period) {
  if (order < 0) {
    throw MimnError(ErrorCode::kInvalidArgument,
                    "homogeneous map order must be >= 0");
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw MimnError(ErrorCode::kInvalidArgument,
                    "homogeneous map period must be > 0");
  }
  FeatureMapSpec spec;
  spec.kind_ = Kind::kHomogeneous;
  spec.kernel_ = kernel;
  spec.order_ = order;
  spec.period_ = period;
  return spec;
}

namespace {

std::vector<std::string_view> SplitColon(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(':', start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

HomogeneousKernel ParseHomogeneousKernel(std::string_view name) {
  if (name == "intersection") return HomogeneousKernel::kIntersection;
  if (name == "chi2") return HomogeneousKernel::kChi2;
  if (name == "js") return HomogeneousKernel::kJensenShannon;
  throw MimnError(ErrorCode::kInvalidArgument,
                  "unknown homogeneous kernel '" + std::string(name) + "'");
}

FeatureMapSpec FeatureMapSpec::Parse(std::string_view text) {
  if (text == "linear" || text == "identity") return Identity();
  if (text == "quad" || text == "quadratic") return Quadratic();
  const std::vector<std::string_view> parts = SplitColon(text);
  if (parts.size() >= 2 && parts.size() <= 4 && parts[0] == "hom") {
    const HomogeneousKernel kernel = ParseHomogeneousKernel(parts[1]);
    int order = kDefaultOrder;
    double period = kDefaultPeriod;
    if (parts.size() >= 3) {
      const auto r = std::from_chars(parts[2].data(),
                                     parts[2].data() + parts[2].size(), order);
      if (parts[2].empty() || r.ec != std::errc() ||
          r.ptr != parts[2].data() + parts[2].size()) {
        throw MimnError(ErrorCode::kInvalidArgument,
                        "invalid map order '" + std::string(parts[2]) + "'");
      }
    }
    if (parts.size() == 4) {
      const std::optional<double> v = ParseDouble(parts[3]);
      if (!v) {
        throw MimnError(ErrorCode::kInvalidArgument,
                        "invalid map period '" + std::string(parts[3]) + "'");
      }
      period = *v;
    }
    return Homogeneous(kernel, order, period);
  }
  throw MimnError(ErrorCode::kInvalidArgument,
                  "unknown feature map '" + std::string(text) +
                      "' (expected linear, quad or hom:<kernel>[:n[:L]])");
}

std::string FeatureMapSpec::ToString() const {
  switch (kind_) {
    case Kind::kIdentity:
      return "linear";
    case Kind::kQuadratic:
      return "quad";
    case Kind::kHomogeneous:
      return std::string("hom:") + HomogeneousKernelName(kernel_) + ":" +
             std::to_string(order_) + ":" + FormatShortest(period_);
  }
  return "?";
}

std::size_t FeatureMapSpec::OutputDimension(std::size_t input_dim) const {
  switch (kind_) {
    case Kind::kIdentity:
      return input_dim;
    case Kind::kQuadratic:
      return input_dim + input_dim * (input_dim + 1) / 2;
    case Kind::kHomogeneous:
      return input_dim * (2 * static_cast<std::size_t>(order_) + 1);
  }
  return input_dim;
}

FeatureVector QuadraticMap(std::span<const double> x) {
  const std::size_t d = x.size();
  FeatureVector out;
  out.reserve(d + d * (d + 1) / 2);
  out.insert(out.end(), x.begin(), x.end());
  for (std::size_t j = 0; j < d; ++j) out.push_back(x[j] * x[j]);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      out.push_back(std::numbers::sqrt2 * x[j] * x[k]);
    }
  }
  return out;
}

namespace {

void CheckNonNegative(std::span<const double> x) {
  for (double v : x) {
    if (v < 0.0 || std::isnan(v)) {
      throw MimnError(ErrorCode::kInvalidArgument,
                      "homogeneous kernels require nonnegative features");
    }
  }
}

// t * log2((x + y) / t), continuously extended to 0 at t = 0.
double JsTerm(double t, double sum) {
  if (t <= 0.0) return 0.0;
  return t * std::log2(sum / t);
}

}  // namespace

double ExactKernel(HomogeneousKernel kernel, std::span<const double> x,
                   std::span<const double> y) {
  if (x.size() != y.size()) {
    throw MimnError(ErrorCode::kDimensionMismatch,
                    "kernel arguments have different dimensions");
  }
  CheckNonNegative(x);
  CheckNonNegative(y);
  double k = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double a = x[j];
    const double b = y[j];
    switch (kernel) {
      case HomogeneousKernel::kIntersection:
        k += std::min(a, b);
        break;
      case HomogeneousKernel::kChi2:
        if (a + b > 0.0) k += 2.0 * a * b / (a + b);
        break;
      case HomogeneousKernel::kJensenShannon:
        k += 0.5 * (JsTerm(a, a + b) + JsTerm(b, a + b));
        break;
    }
  }
  return k;
}

double KernelSignature(HomogeneousKernel kernel, double lambda) {
  switch (kernel) {
    case HomogeneousKernel::kIntersection:
      return std::exp(-std::abs(lambda) / 2.0);
    case HomogeneousKernel::kChi2:
      return 1.0 / std::cosh(lambda / 2.0);
    case HomogeneousKernel::kJensenShannon:
      return 0.5 * std::exp(lambda / 2.0) * std::log2(1.0 + std::exp(-lambda)) +
             0.5 * std::exp(-lambda / 2.0) * std::log2(1.0 + std::exp(lambda));
  }
  return 0.0;
}

namespace {

// (1/pi) * integral_0^{pi/period} K(l) cos(omega l) dl by composite Simpson.
double WindowedSpectrum(HomogeneousKernel kernel, double omega, double period) {
  constexpr int kIntervals = 8192;
  const double upper = std::numbers::pi / period;
  const double step = upper / kIntervals;
  double sum = 0.0;
  for (int i = 0; i <= kIntervals; ++i) {
    const double l = i * step;
    const double f = KernelSignature(kernel, l) * std::cos(omega * l);
    const double weight = (i == 0 || i == kIntervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += weight * f;
  }
  return sum * step / 3.0 / std::numbers::pi;
}

}  // namespace

HomogeneousMap::HomogeneousMap(HomogeneousKernel kernel, int order,
                               double period)
    : order_(order), period_(period) {
  spectrum_.reserve(order + 1);
  for (int j = 0; j <= order; ++j) {
    // The windowed spectrum can dip below zero far out; such samples would
    // make the coordinate imaginary, so they are dropped.
    spectrum_.push_back(
        std::max(0.0, WindowedSpectrum(kernel, j * period, period)));
  }
}

FeatureVector HomogeneousMap::Apply(std::span<const double> x) const {
  CheckNonNegative(x);
  const std::size_t width = 2 * static_cast<std::size_t>(order_) + 1;
  FeatureVector out(x.size() * width, 0.0);
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double v = x[d];
    if (v <= 0.0) continue;
    double* dst = out.data() + d * width;
    const double log_v = std::log(v);
    dst[0] = std::sqrt(v * period_ * spectrum_[0]);
    for (int j = 1; j <= order_; ++j) {
      const double r = std::sqrt(2.0 * v * period_ * spectrum_[j]);
      const double phase = j * period_ * log_v;
      dst[2 * j - 1] = r * std::cos(phase);
      dst[2 * j] = r * std::sin(phase);
    }
  }
  return out;
}

FeatureMap::FeatureMap(const FeatureMapSpec& spec) : spec_(spec) {
  if (spec.kind() == FeatureMapSpec::Kind::kHomogeneous) {
    homogeneous_.emplace_back(spec.kernel(), spec.order(), spec.period());
  }
}

FeatureVector FeatureMap::Apply(std::span<const double> x) const {
  switch (spec_.kind()) {
    case FeatureMapSpec::Kind::kIdentity:
      return FeatureVector(x.begin(), x.end());
    case FeatureMapSpec::Kind::kQuadratic:
      return QuadraticMap(x);
    case FeatureMapSpec::Kind::kHomogeneous:
      return homogeneous_.front().Apply(x);
  }
  return {};
}

}  // namespace mimn
