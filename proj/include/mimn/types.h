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

// Domain types shared by every module: bags, labels, clique-potential
// families and the values they produce.

#ifndef MIMN_TYPES_H_
#define MIMN_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mimn {

using FeatureVector = std::vector<double>;

enum class BagLabel : int { kNegative = -1, kPositive = 1 };

inline int ToInt(BagLabel y) { return static_cast<int>(y); }
inline BagLabel Opposite(BagLabel y) {
  return y == BagLabel::kPositive ? BagLabel::kNegative : BagLabel::kPositive;
}
// Throws kInvalidArgument unless value is -1 or +1.
BagLabel BagLabelFromInt(int value);

struct Bag {
  std::string id;
  BagLabel label = BagLabel::kNegative;
  std::vector<FeatureVector> instances;

  std::size_t size() const { return instances.size(); }
  std::size_t dim() const {
    return instances.empty() ? 0 : instances.front().size();
  }
};

// Throws unless the bag has at least one instance, all instances share one
// dimension and every value is finite.
void ValidateBag(const Bag& bag);

// Instance labels of a bag. Counts are derived from the labels and cannot
// drift out of sync with them.
class InstanceLabeling {
 public:
  InstanceLabeling() = default;
  explicit InstanceLabeling(std::vector<int8_t> labels);

  // m labels, all -1.
  static InstanceLabeling AllNegative(std::size_t m);

  const std::vector<int8_t>& labels() const { return labels_; }
  int operator[](std::size_t i) const { return labels_[i]; }
  std::size_t size() const { return labels_.size(); }
  int positive_count() const { return positive_count_; }
  int negative_count() const {
    return static_cast<int>(labels_.size()) - positive_count_;
  }

  bool operator==(const InstanceLabeling& other) const {
    return labels_ == other.labels_;
  }

 private:
  std::vector<int8_t> labels_;
  int positive_count_ = 0;
};

// Which clique potential defines a positive bag.
//   Mimn      at least one positive instance.
//   Rmimn(r)  at least a fraction r of the instances positive.
//   Gmimn(K)  K learned weights per bag label over equal-width segments of
//             the positive fraction.
class PotentialSpec {
 public:
  enum class Kind { kMimn, kRmimn, kGmimn };

  static PotentialSpec Mimn();
  // Throws kInvalidArgument unless 0 < rho <= 1.
  static PotentialSpec Rmimn(double rho);
  // Throws kInvalidArgument unless k_segments >= 1.
  static PotentialSpec Gmimn(int k_segments);

  // Accepts "mimn", "rmimn:<rho>", "gmimn:<K>".
  static PotentialSpec Parse(std::string_view text);

  Kind kind() const { return kind_; }
  double rho() const { return rho_; }
  int k_segments() const { return k_segments_; }

  // 2 for Mimn and Rmimn, 2K for Gmimn.
  std::size_t num_clique_weights() const;

  // Inverse of Parse.
  std::string ToString() const;

  bool operator==(const PotentialSpec& other) const = default;

 private:
  PotentialSpec(Kind kind, double rho, int k_segments)
      : kind_(kind), rho_(rho), k_segments_(k_segments) {}

  Kind kind_ = Kind::kMimn;
  double rho_ = 0.0;
  int k_segments_ = 0;
};

// Clique weights. Layout: [w+, w-] for Mimn and Rmimn;
// [w_1+ .. w_K+, w_1- .. w_K-] for Gmimn.
struct CliqueWeights {
  std::vector<double> values;

  static CliqueWeights Zero(const PotentialSpec& spec) {
    return CliqueWeights{std::vector<double>(spec.num_clique_weights(), 0.0)};
  }
  std::size_t size() const { return values.size(); }
};

// Clique potential for a (positive count, bag label) pair. Infeasible pairs
// carry no number at all.
class CliqueValue {
 public:
  static CliqueValue Infeasible() { return CliqueValue(); }
  static CliqueValue Finite(double value, int weight_index) {
    CliqueValue v;
    v.finite_ = Entry{value, weight_index};
    return v;
  }

  bool feasible() const { return finite_.has_value(); }
  // Throws kInfeasible on an infeasible value.
  double value() const;
  int weight_index() const;

  bool operator==(const CliqueValue& other) const = default;

 private:
  struct Entry {
    double value;
    int weight_index;
    bool operator==(const Entry&) const = default;
  };
  std::optional<Entry> finite_;
};

// One-hot vector over the clique weights.
struct CliqueIndicator {
  std::size_t size = 0;
  int index = 0;

  std::vector<double> Dense() const {
    std::vector<double> v(size, 0.0);
    v[index] = 1.0;
    return v;
  }
};

}  // namespace mimn

#endif  // MIMN_TYPES_H_
