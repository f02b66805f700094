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

#include "mimn/selfcheck.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "mimn/error.h"
#include "mimn/learning.h"
#include "mimn/numeric_format.h"
#include "mimn/potential.h"

namespace mimn {

std::uint64_t DeriveCaseSeed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ull + index + 1;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

PotentialSpec RandomSpec(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 13);
  const int c = pick(rng);
  if (c == 0) return PotentialSpec::Mimn();
  if (c <= 10) return PotentialSpec::Rmimn(c / 10.0);
  static constexpr int kSegments[] = {3, 5, 10};
  return PotentialSpec::Gmimn(kSegments[c - 11]);
}

Model RandomModel(std::mt19937_64& rng, const PotentialSpec& spec, int dim) {
  std::uniform_real_distribution<double> weight(-2.0, 2.0);
  Model model;
  model.spec = spec;
  model.scaler.min.assign(dim, 0.0);
  model.scaler.max.assign(dim, 1.0);
  model.w_instance.resize(dim);
  for (double& w : model.w_instance) w = weight(rng);
  model.clique = CliqueWeights::Zero(spec);
  for (double& w : model.clique.values) w = weight(rng);
  return model;
}

Bag RandomBag(std::mt19937_64& rng, int m, int dim, BagLabel label) {
  std::uniform_real_distribution<double> feature(-1.0, 1.0);
  Bag bag;
  bag.id = "case";
  bag.label = label;
  for (int i = 0; i < m; ++i) {
    FeatureVector x(dim);
    for (double& v : x) v = feature(rng);
    bag.instances.push_back(std::move(x));
  }
  return bag;
}

BagLabel RandomLabel(std::mt19937_64& rng) {
  return std::bernoulli_distribution(0.5)(rng) ? BagLabel::kPositive
                                              : BagLabel::kNegative;
}

// Gap between the best and second-best labeling for one bag label, and the
// best score itself.
struct LabelGap {
  double best = 0.0;
  double gap = std::numeric_limits<double>::infinity();
};

LabelGap GapForLabel(const PotentialSpec& spec, const CliqueWeights& weights,
                     std::span<const double> potentials, BagLabel y) {
  const int m = static_cast<int>(potentials.size());
  std::vector<double> sorted(potentials.begin(), potentials.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double base = 0.0;
  for (double p : potentials) base -= p;
  std::vector<std::pair<double, int>> totals;
  double prefix = 0.0;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) prefix += 2.0 * sorted[k - 1];
    if (auto idx = CliqueWeightIndex(spec, k, m, y)) {
      totals.emplace_back(base + prefix + weights.values[*idx], k);
    }
  }
  std::sort(totals.begin(), totals.end(), std::greater<>());
  LabelGap out;
  out.best = totals.front().first;
  if (totals.size() > 1) out.gap = totals[0].first - totals[1].first;
  const int k_star = totals.front().second;
  if (k_star > 0 && k_star < m) {
    out.gap = std::min(out.gap, 2.0 * (sorted[k_star - 1] - sorted[k_star]));
  }
  return out;
}

}  // namespace

InferenceCase MakeInferenceCase(std::uint64_t case_seed, int max_bag) {
  std::mt19937_64 rng(case_seed);
  InferenceCase c;
  const PotentialSpec spec = RandomSpec(rng);
  const int m = std::uniform_int_distribution<int>(1, max_bag)(rng);
  const int dim = std::uniform_int_distribution<int>(1, 4)(rng);
  c.model = RandomModel(rng, spec, dim);
  c.y = RandomLabel(rng);
  c.bag = RandomBag(rng, m, dim, c.y);
  return c;
}

GradientCase MakeGradientCase(std::uint64_t case_seed) {
  std::mt19937_64 rng(case_seed);
  GradientCase c;
  const PotentialSpec spec = RandomSpec(rng);
  const int dim = std::uniform_int_distribution<int>(1, 4)(rng);
  c.model = RandomModel(rng, spec, dim);
  c.lambda = std::bernoulli_distribution(0.5)(rng) ? 1.0 : 0.1;
  const int n = std::uniform_int_distribution<int>(2, 6)(rng);
  for (int b = 0; b < n; ++b) {
    const int m = std::uniform_int_distribution<int>(1, 8)(rng);
    c.bags.push_back(RandomBag(rng, m, dim, RandomLabel(rng)));
  }
  return c;
}

double ArgmaxGap(const Model& model, std::span<const Bag> bags) {
  double gap = std::numeric_limits<double>::infinity();
  for (const Bag& bag : bags) {
    const std::vector<double> potentials = InstanceScores(model, bag);
    const LabelGap same =
        GapForLabel(model.spec, model.clique, potentials, bag.label);
    const LabelGap other = GapForLabel(model.spec, model.clique, potentials,
                                       Opposite(bag.label));
    const double other_value = 1.0 + other.best;
    gap = std::min(gap, same.gap);
    gap = std::min(gap, std::abs(other_value - same.best));
    if (other_value > same.best) gap = std::min(gap, other.gap);
  }
  return gap;
}

GradientCheck CheckGradient(const GradientCase& c) {
  const std::vector<double> analytic = Subgradient(c.model, c.bags, c.lambda);
  std::vector<double> params = c.model.Parameters();
  Model probe = c.model;
  GradientCheck check;
  for (std::size_t j = 0; j < params.size(); ++j) {
    const double saved = params[j];
    params[j] = saved + kFiniteDifferenceStep;
    probe.SetParameters(params);
    const double up = Objective(probe, c.bags, c.lambda);
    params[j] = saved - kFiniteDifferenceStep;
    probe.SetParameters(params);
    const double down = Objective(probe, c.bags, c.lambda);
    params[j] = saved;
    const double fd = (up - down) / (2.0 * kFiniteDifferenceStep);
    const double err =
        std::abs(fd - analytic[j]) / std::max(1.0, std::abs(analytic[j]));
    check.max_error = std::max(check.max_error, err);
  }
  check.passed = check.max_error <= kGradientTolerance;
  return check;
}

std::string CheckInferenceCase(std::uint64_t case_seed, int max_bag,
                               const MapFunction& map_function) {
  const InferenceCase c = MakeInferenceCase(case_seed, max_bag);
  const InferenceResult fast = map_function
                                   ? map_function(c.model, c.bag, c.y)
                                   : MapLabeling(c.model, c.bag, c.y);
  const InferenceResult exact = BruteForceMap(c.model, c.bag, c.y);
  if (fast.score == exact.score) return {};
  std::ostringstream os;
  os << "map inference mismatch (" << c.model.spec.ToString()
     << ", m=" << c.bag.size() << ", y=" << ToInt(c.y)
     << "): fast=" << FormatShortest(fast.score)
     << " exhaustive=" << FormatShortest(exact.score);
  return os.str();
}

std::string CheckLossAugmentedCase(std::uint64_t case_seed, int max_bag) {
  const InferenceCase c = MakeInferenceCase(case_seed, max_bag);
  const LossAugmentedResult fast = LossAugmented(c.model, c.bag, c.y);
  const LossAugmentedResult exact = BruteForceLossAugmented(c.model, c.bag, c.y);
  if (fast.value == exact.value) return {};
  std::ostringstream os;
  os << "loss-augmented mismatch (" << c.model.spec.ToString()
     << ", m=" << c.bag.size() << ", y_true=" << ToInt(c.y)
     << "): fast=" << FormatShortest(fast.value)
     << " exhaustive=" << FormatShortest(exact.value);
  return os.str();
}

std::string SelfCheckReport::Summary() const {
  std::ostringstream os;
  os << inference_passed << "/" << inference_total << " inference, "
     << gradient_passed << "/" << gradient_total << " gradient\n"
     << loss_passed << "/" << loss_total << " loss-augmented\n"
     << "max gradient error " << max_gradient_error << "\n";
  if (failing_seed) {
    os << "FAILED case seed " << *failing_seed << ": " << failure << "\n";
  }
  return os.str();
}

SelfCheckReport RunSelfCheck(const SelfCheckOptions& options) {
  if (options.cases < 1 || options.gradient_cases < 0) {
    throw MimnError(ErrorCode::kInvalidArgument, "case counts must be >= 1");
  }
  if (options.max_bag < 1 || options.max_bag > kBruteForceMaxBag) {
    throw MimnError(ErrorCode::kInvalidArgument,
                    "max bag size must be in [1, " +
                        std::to_string(kBruteForceMaxBag) + "]");
  }
  SelfCheckReport report;
  auto record = [&report](std::uint64_t seed, const std::string& failure) {
    if (!report.failing_seed) {
      report.failing_seed = seed;
      report.failure = failure;
    }
  };
  for (int i = 0; i < options.cases; ++i) {
    const std::uint64_t case_seed = DeriveCaseSeed(options.seed, i);
    ++report.inference_total;
    ++report.loss_total;
    std::string failure =
        CheckInferenceCase(case_seed, options.max_bag, options.map_function);
    if (failure.empty()) {
      ++report.inference_passed;
    } else {
      record(case_seed, failure);
    }
    failure = CheckLossAugmentedCase(case_seed, options.max_bag);
    if (failure.empty()) {
      ++report.loss_passed;
    } else {
      record(case_seed, failure);
    }
  }

  // Gradient points come from a separate seed stream; points without unique
  // argmaxes are skipped.
  std::uint64_t index = 0;
  const std::uint64_t gradient_seed = options.seed ^ 0x5DEECE66Dull;
  while (report.gradient_total < options.gradient_cases) {
    const std::uint64_t case_seed = DeriveCaseSeed(gradient_seed, index++);
    const GradientCase c = MakeGradientCase(case_seed);
    if (ArgmaxGap(c.model, c.bags) < kMinArgmaxGap) continue;
    ++report.gradient_total;
    const GradientCheck check = CheckGradient(c);
    report.max_gradient_error = std::max(report.max_gradient_error, check.max_error);
    if (check.passed) {
      ++report.gradient_passed;
    } else {
      record(case_seed, "subgradient mismatch, max relative error " +
                            FormatShortest(check.max_error));
    }
  }
  return report;
}

}  // namespace mimn
