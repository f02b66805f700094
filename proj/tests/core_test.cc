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


#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mimn/error.h"
#include "mimn/model.h"
#include "mimn/potential.h"
#include "mimn/types.h"

namespace mimn {
namespace {

Model LinearModel(std::vector<double> w, PotentialSpec spec,
                  std::vector<double> clique) {
  Model m;
  m.spec = spec;
  m.w_instance = std::move(w);
  m.clique = CliqueWeights{std::move(clique)};
  return m;
}

Bag MakeBag(std::vector<FeatureVector> xs, BagLabel y = BagLabel::kPositive) {
  return Bag{"b", y, std::move(xs)};
}

InstanceLabeling Labels(std::vector<int8_t> h) {
  return InstanceLabeling(std::move(h));
}

TEST(PotentialSpecTest, ParseAndPrintRoundTrip) {
  for (const char* text : {"mimn", "rmimn:0.5", "rmimn:1", "gmimn:5"}) {
    EXPECT_EQ(PotentialSpec::Parse(text).ToString(), text);
  }
  EXPECT_EQ(PotentialSpec::Parse("rmimn:0.3"), PotentialSpec::Rmimn(0.3));
  EXPECT_EQ(PotentialSpec::Gmimn(10).num_clique_weights(), 20u);
  EXPECT_EQ(PotentialSpec::Mimn().num_clique_weights(), 2u);
}

TEST(PotentialSpecTest, RejectsInvalidParameters) {
  for (double rho : {0.0, -0.1, 1.5}) {
    try {
      PotentialSpec::Rmimn(rho);
      FAIL() << rho;
    } catch (const MimnError& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
      EXPECT_STREQ(e.what(), "rho must be in (0,1]");
    }
  }
  EXPECT_THROW(PotentialSpec::Gmimn(0), MimnError);
  EXPECT_THROW(PotentialSpec::Parse("gmimn:x"), MimnError);
  EXPECT_THROW(PotentialSpec::Parse("svm"), MimnError);
}

TEST(CliqueTest, MimnPositiveWithNoPositivesIsInfeasible) {
  const CliqueWeights w{{0.5, -0.2}};
  EXPECT_FALSE(EvaluateClique(PotentialSpec::Mimn(), w, 0, 3,
                              BagLabel::kPositive).feasible());
  EXPECT_EQ(EvaluateClique(PotentialSpec::Mimn(), w, 2, 3, BagLabel::kPositive),
            CliqueValue::Finite(0.5, 0));
  EXPECT_EQ(EvaluateClique(PotentialSpec::Mimn(), w, 0, 3, BagLabel::kNegative),
            CliqueValue::Finite(-0.2, 1));
}

TEST(CliqueTest, RmimnBelowThresholdIsNegative) {
  const CliqueWeights w{{0.7, -0.2}};
  const CliqueValue v = EvaluateClique(PotentialSpec::Rmimn(0.5), w, 1, 4,
                                       BagLabel::kNegative);
  ASSERT_TRUE(v.feasible());
  EXPECT_EQ(v.value(), -0.2);
}

TEST(CliqueTest, GmimnSegmentIndex) {
  const PotentialSpec spec = PotentialSpec::Gmimn(10);
  // 0.3 < 2/5 <= 0.4: fourth positive segment.
  EXPECT_EQ(CliqueWeightIndex(spec, 2, 5, BagLabel::kPositive), 3);
  // 0.4 <= 2/5 < 0.5: fifth negative segment, after the ten positive ones.
  EXPECT_EQ(CliqueWeightIndex(spec, 2, 5, BagLabel::kNegative), 14);
  EXPECT_FALSE(CliqueWeightIndex(spec, 0, 5, BagLabel::kPositive));
  EXPECT_FALSE(CliqueWeightIndex(spec, 5, 5, BagLabel::kNegative));
}

TEST(CliqueTest, InfeasibleValueHasNoNumber) {
  EXPECT_THROW(CliqueValue::Infeasible().value(), MimnError);
}

TEST(CliqueTest, RmimnExactAtRationalBoundaries) {
  // 0.3 * 10 must give exactly three required positives.
  const PotentialSpec spec = PotentialSpec::Rmimn(0.3);
  EXPECT_FALSE(CliqueWeightIndex(spec, 2, 10, BagLabel::kPositive));
  EXPECT_TRUE(CliqueWeightIndex(spec, 3, 10, BagLabel::kPositive));
  EXPECT_TRUE(CliqueWeightIndex(spec, 2, 10, BagLabel::kNegative));
  EXPECT_FALSE(CliqueWeightIndex(spec, 3, 10, BagLabel::kNegative));
}

TEST(FeasibleCountsTest, Examples) {
  EXPECT_EQ(FeasibleCounts(PotentialSpec::Mimn(), 3, BagLabel::kPositive),
            (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(FeasibleCounts(PotentialSpec::Mimn(), 3, BagLabel::kNegative),
            (std::vector<int>{0}));
  EXPECT_EQ(FeasibleCounts(PotentialSpec::Rmimn(1.0), 4, BagLabel::kNegative),
            (std::vector<int>{0, 1, 2, 3}));
}

std::vector<PotentialSpec> AllSpecs() {
  std::vector<PotentialSpec> specs = {PotentialSpec::Mimn()};
  for (int i = 1; i <= 10; ++i) specs.push_back(PotentialSpec::Rmimn(i / 10.0));
  for (int k : {1, 2, 3, 5, 7, 10, 64}) specs.push_back(PotentialSpec::Gmimn(k));
  return specs;
}

TEST(FeasibleCountsTest, NonemptyAndMatchesCliqueExhaustively) {
  for (const PotentialSpec& spec : AllSpecs()) {
    const CliqueWeights w = CliqueWeights::Zero(spec);
    for (int m = 1; m <= 64; ++m) {
      for (BagLabel y : {BagLabel::kPositive, BagLabel::kNegative}) {
        const std::vector<int> counts = FeasibleCounts(spec, m, y);
        ASSERT_FALSE(counts.empty()) << spec.ToString() << " m=" << m;
        std::size_t next = 0;
        for (int k = 0; k <= m; ++k) {
          const bool listed = next < counts.size() && counts[next] == k;
          if (listed) ++next;
          EXPECT_EQ(EvaluateClique(spec, w, k, m, y).feasible(), listed)
              << spec.ToString() << " m=" << m << " k=" << k;
        }
      }
    }
  }
}

TEST(GmimnTest, SegmentsPartitionTheCounts) {
  for (int K : {1, 2, 3, 4, 5, 7, 10, 13}) {
    for (int m = 1; m <= 40; ++m) {
      for (int mp = 1; mp <= m; ++mp) {
        int hits = 0;
        for (int k = 1; k <= K; ++k) {
          // (k-1)/K < mp/m <= k/K, in exact integer arithmetic.
          if ((k - 1) * m < mp * K && mp * K <= k * m) ++hits;
        }
        ASSERT_EQ(hits, 1);
        const auto idx = CliqueWeightIndex(PotentialSpec::Gmimn(K), mp, m,
                                           BagLabel::kPositive);
        ASSERT_TRUE(idx);
        const int k = *idx + 1;
        EXPECT_TRUE((k - 1) * m < mp * K && mp * K <= k * m)
            << "K=" << K << " m=" << m << " m+=" << mp;
      }
      for (int mp = 0; mp < m; ++mp) {
        const auto idx = CliqueWeightIndex(PotentialSpec::Gmimn(K), mp, m,
                                           BagLabel::kNegative);
        ASSERT_TRUE(idx);
        const int k = *idx - K + 1;
        EXPECT_TRUE((k - 1) * m <= mp * K && mp * K < k * m)
            << "K=" << K << " m=" << m << " m+=" << mp;
      }
    }
  }
}

TEST(CliqueIndicatorTest, OneHotExamples) {
  const CliqueIndicator mimn =
      MakeCliqueIndicator(PotentialSpec::Mimn(), 2, 3, BagLabel::kPositive);
  EXPECT_EQ(mimn.Dense(), (std::vector<double>{1, 0}));
  EXPECT_EQ(MakeCliqueIndicator(PotentialSpec::Mimn(), 0, 3,
                                BagLabel::kNegative).Dense(),
            (std::vector<double>{0, 1}));
  const CliqueIndicator g =
      MakeCliqueIndicator(PotentialSpec::Gmimn(10), 2, 5, BagLabel::kPositive);
  EXPECT_EQ(g.size, 20u);
  EXPECT_EQ(g.index, 3);
  try {
    MakeCliqueIndicator(PotentialSpec::Mimn(), 0, 3, BagLabel::kPositive);
    FAIL();
  } catch (const MimnError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
}

TEST(ScoreTest, WorkedExample) {
  const Model model =
      LinearModel({1.0, -0.5}, PotentialSpec::Mimn(), {0.3, -0.1});
  const Bag bag = MakeBag({{1.0, 0.0}, {0.0, 2.0}});
  // h = (+1, -1): 1 + 1 + 0.3.
  const CliqueValue v = Score(model, bag, Labels({1, -1}), BagLabel::kPositive);
  ASSERT_TRUE(v.feasible());
  EXPECT_DOUBLE_EQ(v.value(), 2.3);
  EXPECT_FALSE(
      Score(model, bag, Labels({-1, -1}), BagLabel::kPositive).feasible());
}

TEST(ScoreTest, LinearInJointFeature) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const PotentialSpec& spec : AllSpecs()) {
    Model model = ZeroModel(spec, FeatureMapSpec::Identity(),
                            Scaler{{0, 0, 0}, {1, 1, 1}}, false);
    for (double& w : model.w_instance) w = u(rng);
    for (double& w : model.clique.values) w = u(rng);
    Bag bag = MakeBag({});
    std::vector<int8_t> h;
    for (int i = 0; i < 7; ++i) {
      bag.instances.push_back({u(rng), u(rng), u(rng)});
      h.push_back(u(rng) > 0 ? 1 : -1);
    }
    const InstanceLabeling labels(h);
    for (BagLabel y : {BagLabel::kPositive, BagLabel::kNegative}) {
      const CliqueValue v = Score(model, bag, labels, y);
      const auto idx = CliqueWeightIndex(spec, labels.positive_count(), 7, y);
      ASSERT_EQ(v.feasible(), idx.has_value());
      if (!idx) continue;
      std::vector<double> sum(3, 0.0);
      for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < 3; ++j) sum[j] += h[i] * bag.instances[i][j];
      }
      const double expected =
          Dot(model.w_instance, sum) + model.clique.values[*idx];
      EXPECT_NEAR(v.value(), expected, 1e-12);
    }
  }
}

TEST(ScoreTest, CliqueDependsOnlyOnCount) {
  const PotentialSpec spec = PotentialSpec::Gmimn(3);
  const CliqueWeights w{{1, 2, 3, 4, 5, 6}};
  const Model model = LinearModel({0.0}, spec, w.values);
  const Bag bag = MakeBag({{1}, {2}, {3}, {4}});
  std::vector<int8_t> h = {1, 1, -1, -1};
  std::sort(h.begin(), h.end());
  const double first =
      Score(model, bag, Labels(h), BagLabel::kPositive).value();
  while (std::next_permutation(h.begin(), h.end())) {
    EXPECT_EQ(Score(model, bag, Labels(h), BagLabel::kPositive).value(), first);
  }
}

TEST(ScoreTest, DimensionMismatchThrows) {
  const Model model = LinearModel({1.0}, PotentialSpec::Mimn(), {0, 0});
  try {
    Score(model, MakeBag({{1.0, 2.0}}), Labels({1}), BagLabel::kPositive);
    FAIL();
  } catch (const MimnError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(InstanceLabelingTest, CountsFollowLabels) {
  const InstanceLabeling h = Labels({1, -1, 1, 1});
  EXPECT_EQ(h.positive_count(), 3);
  EXPECT_EQ(h.negative_count(), 1);
  EXPECT_EQ(InstanceLabeling::AllNegative(5).positive_count(), 0);
  EXPECT_THROW(Labels({0}), MimnError);
}

TEST(BagTest, Validation) {
  EXPECT_THROW(ValidateBag(MakeBag({})), MimnError);
  EXPECT_THROW(ValidateBag(MakeBag({{1.0}, {1.0, 2.0}})), MimnError);
  EXPECT_THROW(ValidateBag(MakeBag({{std::nan("")}})), MimnError);
  EXPECT_NO_THROW(ValidateBag(MakeBag({{1.0}, {2.0}})));
  EXPECT_THROW(BagLabelFromInt(0), MimnError);
  EXPECT_EQ(BagLabelFromInt(-1), BagLabel::kNegative);
}

}  // namespace
}  // namespace mimn
