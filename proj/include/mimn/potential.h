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

// Clique potentials and the joint score of (bag, instance labels, bag label).
//
// The score of a labeling h of bag X under bag label y is
//
//   f(X, h, y) = C(m+, m-, y) + sum_i h_i <w, x_i>
//
// where C depends on h only through the positive count m+. C is either a
// weight from CliqueWeights or infeasible; infeasible combinations are
// excluded from every maximization rather than given a sentinel value.

#ifndef MIMN_POTENTIAL_H_
#define MIMN_POTENTIAL_H_

#include <optional>
#include <span>
#include <vector>

#include "mimn/model.h"
#include "mimn/types.h"

namespace mimn {

// h * <w, x>. Throws kDimensionMismatch.
double InstancePotential(std::span<const double> w, std::span<const double> x,
                         int h);

double Dot(std::span<const double> a, std::span<const double> b);

// Index into CliqueWeights of the weight active at (m_plus, m, y), or nullopt
// if the combination is infeasible. Requires 0 <= m_plus <= m and m >= 1.
std::optional<int> CliqueWeightIndex(const PotentialSpec& spec, int m_plus,
                                     int m, BagLabel y);

CliqueValue EvaluateClique(const PotentialSpec& spec,
                           const CliqueWeights& weights, int m_plus, int m,
                           BagLabel y);

// {k : EvaluateClique(spec, ., k, m, y) is finite}, ascending.
std::vector<int> FeasibleCounts(const PotentialSpec& spec, int m, BagLabel y);

// Throws kInfeasible if (m_plus, y) is infeasible.
CliqueIndicator MakeCliqueIndicator(const PotentialSpec& spec, int m_plus,
                                    int m, BagLabel y);

// Joint score of a prepared bag. Instance terms are summed in index order and
// the clique value is added last.
CliqueValue Score(const Model& model, const Bag& bag, const InstanceLabeling& h,
                  BagLabel y);

// Same as Score, from precomputed instance scores p_i = <w, x_i>.
CliqueValue ScoreFromPotentials(const PotentialSpec& spec,
                                const CliqueWeights& weights,
                                std::span<const double> potentials,
                                const InstanceLabeling& h, BagLabel y);

}  // namespace mimn

#endif  // MIMN_POTENTIAL_H_
