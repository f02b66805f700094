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

// Datasets: the MIL-CSV text format, a synthetic bag generator with a
// controlled witness rate, and bag-level k-fold splits.
//
// MIL-CSV: one instance per line, `bag_id,label,f1,...,fd`, label in {-1, 1}
// and constant within a bag. An optional header line is recognised by a
// non-numeric third field. Bags keep their first-appearance order and
// instances keep file order.

#ifndef MIMN_DATASET_H_
#define MIMN_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mimn/types.h"

namespace mimn {

struct Dataset {
  std::vector<Bag> bags;

  std::size_t dim() const { return bags.empty() ? 0 : bags.front().dim(); }
  std::size_t size() const { return bags.size(); }
  int CountLabel(BagLabel y) const;
};

// Nonempty, unique ids, every bag valid, shared dimension.
void ValidateDataset(const Dataset& dataset);

// Errors are kParse and name the 1-based line.
Dataset ParseMilCsv(std::string_view text);
std::string WriteMilCsv(const Dataset& dataset);

Dataset ReadMilCsvFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

struct SynthParams {
  int n_pos_bags = 100;
  int n_neg_bags = 100;
  int bag_size = 10;
  int dim = 20;
  double witness_rate = 0.3;        // (0, 1]
  double neg_contamination = 0.0;   // [0, 1)
  double separation = 4.0;          // > 0
  double noise_sd = 1.0;            // > 0

  // Throws kInvalidArgument.
  void Validate() const;
};

struct SyntheticData {
  Dataset dataset;
  // is_concept[b][i]: instance i of bag b was drawn from the positive concept.
  std::vector<std::vector<bool>> is_concept;
};

// Concept instances ~ N(+c, sd^2 I) and background ~ N(-c, sd^2 I) with
// c = separation / 2 * u, u = (1, -1, 1, ...) / sqrt(d). Positive bags get
// exactly ceil(witness_rate * m) concept instances, negative bags
// floor(neg_contamination * m). Instance order within a bag and bag order
// are shuffled. Randomness comes from std::mt19937_64 seeded with `seed`.
SyntheticData SynthesizeWithTruth(const SynthParams& params, std::uint64_t seed);
Dataset Synthesize(const SynthParams& params, std::uint64_t seed);

struct Fold {
  Dataset train;
  Dataset test;
};

// Bag-level partition into k folds whose sizes differ by at most one. With
// `stratified` each label is shuffled separately and dealt round-robin, so
// every fold gets its share of both classes. Bags keep dataset order inside
// train and test. Throws kInvalidArgument unless 2 <= k <= size.
std::vector<Fold> KFoldSplit(const Dataset& dataset, int k, std::uint64_t seed,
                             bool stratified = true);

}  // namespace mimn

#endif  // MIMN_DATASET_H_
