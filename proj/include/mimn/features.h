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

// Feature scaling and explicit kernel feature maps.
//
// Inputs are first scaled to [0, 1] per dimension, then optionally lifted by
// a feature map so that the linear scorer behaves like a kernel machine:
//
//   Identity      x
//   Quadratic     [x; x_j^2; sqrt(2) x_j x_k (j < k)]   <P(x),P(y)> = <x,y> + <x,y>^2
//   Homogeneous   per-dimension 2n+1 coordinates approximating an additive
//                 homogeneous kernel (intersection, chi2, Jensen-Shannon)
//
// The homogeneous maps sample the kernel spectrum at period L. The spectrum
// used is that of the kernel signature restricted to one period
// [-pi/L, pi/L] (the "rectangular window"), which removes aliasing between
// neighbouring periods.

#ifndef MIMN_FEATURES_H_
#define MIMN_FEATURES_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mimn/types.h"

namespace mimn {

struct Scaler {
  std::vector<double> min;
  std::vector<double> max;

  std::size_t dim() const { return min.size(); }
};

// Per-dimension extrema over every instance of every bag.
Scaler FitScaler(std::span<const Bag> bags);

// (x - min) / (max - min), clamped to [0, 1]; constant dimensions map to 0.
FeatureVector ApplyScaler(const Scaler& scaler, std::span<const double> x);

enum class HomogeneousKernel { kIntersection, kChi2, kJensenShannon };

const char* HomogeneousKernelName(HomogeneousKernel kernel);
// "intersection" | "chi2" | "js"
HomogeneousKernel ParseHomogeneousKernel(std::string_view name);

class FeatureMapSpec {
 public:
  enum class Kind { kIdentity, kQuadratic, kHomogeneous };

  static constexpr int kDefaultOrder = 3;
  static constexpr double kDefaultPeriod = 0.5;

  static FeatureMapSpec Identity();
  static FeatureMapSpec Quadratic();
  // Throws kInvalidArgument unless order >= 0 and period > 0.
  static FeatureMapSpec Homogeneous(HomogeneousKernel kernel,
                                    int order = kDefaultOrder,
                                    double period = kDefaultPeriod);

  // "linear" | "quad" | "hom:<intersection|chi2|js>[:<n>[:<L>]]".
  static FeatureMapSpec Parse(std::string_view text);
  std::string ToString() const;

  Kind kind() const { return kind_; }
  HomogeneousKernel kernel() const { return kernel_; }
  int order() const { return order_; }
  double period() const { return period_; }

  std::size_t OutputDimension(std::size_t input_dim) const;

  bool operator==(const FeatureMapSpec& other) const = default;

 private:
  Kind kind_ = Kind::kIdentity;
  HomogeneousKernel kernel_ = HomogeneousKernel::kChi2;
  int order_ = kDefaultOrder;
  double period_ = kDefaultPeriod;
};

FeatureVector QuadraticMap(std::span<const double> x);

// Closed-form additive kernels. Throws kInvalidArgument on negative input
// and kDimensionMismatch on unequal lengths.
double ExactKernel(HomogeneousKernel kernel, std::span<const double> x,
                   std::span<const double> y);

// Kernel signature K(lambda) with k(x, y) = sqrt(xy) K(log y - log x).
double KernelSignature(HomogeneousKernel kernel, double lambda);

class HomogeneousMap {
 public:
  HomogeneousMap(HomogeneousKernel kernel, int order, double period);

  // Throws kInvalidArgument on negative input.
  FeatureVector Apply(std::span<const double> x) const;

  // Windowed spectrum sampled at j * period, j = 0..order.
  const std::vector<double>& spectrum() const { return spectrum_; }

 private:
  int order_;
  double period_;
  std::vector<double> spectrum_;
};

// Applies any FeatureMapSpec; homogeneous coefficients are computed once.
class FeatureMap {
 public:
  explicit FeatureMap(const FeatureMapSpec& spec);

  FeatureVector Apply(std::span<const double> x) const;
  const FeatureMapSpec& spec() const { return spec_; }

 private:
  FeatureMapSpec spec_;
  std::vector<HomogeneousMap> homogeneous_;  // empty unless kHomogeneous
};

}  // namespace mimn

#endif  // MIMN_FEATURES_H_
