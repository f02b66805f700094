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
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "mimn/dataset.h"
#include "mimn/error.h"

namespace mimn {
namespace {

std::string ParseError(const std::string& text) {
  try {
    ParseMilCsv(text);
  } catch (const MimnError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    return e.what();
  }
  return "";
}

TEST(ParseMilCsvTest, GroupsInstancesByBag) {
  const Dataset d = ParseMilCsv("b1,1,0.5,0.2\nb1,1,0.1,0.9\n");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.bags[0].id, "b1");
  EXPECT_EQ(d.bags[0].label, BagLabel::kPositive);
  EXPECT_EQ(d.bags[0].instances,
            (std::vector<FeatureVector>{{0.5, 0.2}, {0.1, 0.9}}));
}

TEST(ParseMilCsvTest, KeepsFirstAppearanceOrder) {
  const Dataset d =
      ParseMilCsv("bag_id,label,f1\nz,-1,1\na,1,2\nz,-1,3\n");
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.bags[0].id, "z");
  EXPECT_EQ(d.bags[0].instances, (std::vector<FeatureVector>{{1}, {3}}));
  EXPECT_EQ(d.bags[1].id, "a");
  EXPECT_EQ(d.dim(), 1u);
  EXPECT_EQ(d.CountLabel(BagLabel::kNegative), 1);
}

TEST(ParseMilCsvTest, ErrorsNameTheLine) {
  EXPECT_EQ(ParseError("b1,1,0.5\nb1,-1,0.5\n"),
            "inconsistent bag label at line 2");
  EXPECT_EQ(ParseError("b1,1,0.5\nb2,0,0.5\n"),
            "label must be -1 or 1 at line 2");
  EXPECT_NE(ParseError("b1,1,0.5,1\nb2,1,0.5\n").find("at line 2"),
            std::string::npos);
  EXPECT_NE(ParseError("").find("empty file"), std::string::npos);
  EXPECT_NE(ParseError("b1,1,0.5\n\nb2,1,0.5\n").find("at line 2"),
            std::string::npos);
  EXPECT_NE(ParseError("b1,1,0.5\nb1,1,abc\n").find("at line 2"),
            std::string::npos);
  EXPECT_NE(ParseError("b1,1\n").find("at line 1"), std::string::npos);
}

TEST(ParseMilCsvTest, AcceptsCrLf) {
  const Dataset d = ParseMilCsv("b1,1,0.5\r\nb2,-1,0.25\r\n");
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.bags[1].instances[0][0], 0.25);
}

Dataset RandomDataset(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1e3);
  Dataset d;
  for (int b = 0; b < 12; ++b) {
    Bag bag{"bag" + std::to_string(b),
            b % 3 ? BagLabel::kNegative : BagLabel::kPositive, {}};
    for (int i = 0; i <= b % 4; ++i) {
      FeatureVector x(5);
      for (double& v : x) v = n(rng) / 7.0;
      x[0] = 1e-300 * x[1];
      bag.instances.push_back(x);
    }
    d.bags.push_back(bag);
  }
  return d;
}

TEST(WriteMilCsvTest, RoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Dataset d = RandomDataset(seed);
    const std::string text = WriteMilCsv(d);
    const Dataset back = ParseMilCsv(text);
    ASSERT_EQ(back.size(), d.size());
    for (std::size_t b = 0; b < d.size(); ++b) {
      EXPECT_EQ(back.bags[b].id, d.bags[b].id);
      EXPECT_EQ(back.bags[b].label, d.bags[b].label);
      EXPECT_EQ(back.bags[b].instances, d.bags[b].instances);
    }
    EXPECT_EQ(WriteMilCsv(back), text);
  }
}

TEST(WriteMilCsvTest, CanonicalForm) {
  Dataset d;
  d.bags = {Bag{"a", BagLabel::kPositive, {{0.1, 2.0}, {-3.5, 1e-20}}}};
  EXPECT_EQ(WriteMilCsv(d), "a,1,0.1,2\na,1,-3.5,1e-20\n");
}

TEST(ValidateDatasetTest, RejectsDuplicatesAndMixedDimensions) {
  Dataset d;
  d.bags = {Bag{"a", BagLabel::kPositive, {{1.0}}},
            Bag{"a", BagLabel::kNegative, {{1.0}}}};
  EXPECT_THROW(ValidateDataset(d), MimnError);
  d.bags[1].id = "b";
  EXPECT_NO_THROW(ValidateDataset(d));
  d.bags[1].instances = {{1.0, 2.0}};
  EXPECT_THROW(ValidateDataset(d), MimnError);
  EXPECT_THROW(ValidateDataset(Dataset{}), MimnError);
}

TEST(SynthesizeTest, WitnessCountsAreExact) {
  SynthParams p;
  p.witness_rate = 0.3;
  const SyntheticData s = SynthesizeWithTruth(p, 1);
  ASSERT_EQ(s.dataset.size(), 200u);
  EXPECT_EQ(s.dataset.CountLabel(BagLabel::kPositive), 100);
  for (std::size_t b = 0; b < s.dataset.size(); ++b) {
    const int concepts = static_cast<int>(
        std::count(s.is_concept[b].begin(), s.is_concept[b].end(), true));
    EXPECT_EQ(s.dataset.bags[b].size(), 10u);
    EXPECT_EQ(s.dataset.bags[b].dim(), 20u);
    EXPECT_EQ(concepts, s.dataset.bags[b].label == BagLabel::kPositive ? 3 : 0);
  }
}

TEST(SynthesizeTest, ContaminationAndCeilings) {
  SynthParams p;
  p.n_pos_bags = 5;
  p.n_neg_bags = 5;
  p.bag_size = 7;
  p.witness_rate = 0.5;          // ceil(3.5) = 4
  p.neg_contamination = 0.3;     // floor(2.1) = 2
  const SyntheticData s = SynthesizeWithTruth(p, 8);
  for (std::size_t b = 0; b < s.dataset.size(); ++b) {
    const int concepts = static_cast<int>(
        std::count(s.is_concept[b].begin(), s.is_concept[b].end(), true));
    EXPECT_EQ(concepts, s.dataset.bags[b].label == BagLabel::kPositive ? 4 : 2);
  }
}

TEST(SynthesizeTest, ConceptMeansAreSeparated) {
  SynthParams p;
  p.n_pos_bags = 200;
  p.n_neg_bags = 200;
  p.dim = 4;
  p.separation = 3.0;
  p.noise_sd = 0.5;
  p.neg_contamination = 0.2;
  const SyntheticData s = SynthesizeWithTruth(p, 3);
  std::vector<double> mc(4, 0.0), mb(4, 0.0);
  int nc = 0, nb = 0;
  for (std::size_t b = 0; b < s.dataset.size(); ++b) {
    for (std::size_t i = 0; i < s.dataset.bags[b].size(); ++i) {
      auto& m = s.is_concept[b][i] ? mc : mb;
      (s.is_concept[b][i] ? nc : nb)++;
      for (int j = 0; j < 4; ++j) m[j] += s.dataset.bags[b].instances[i][j];
    }
  }
  double dist2 = 0.0;
  for (int j = 0; j < 4; ++j) {
    const double diff = mc[j] / nc - mb[j] / nb;
    dist2 += diff * diff;
  }
  EXPECT_NEAR(std::sqrt(dist2), 3.0, 0.05);
}

TEST(SynthesizeTest, DeterministicUnderSeed) {
  SynthParams p;
  p.n_pos_bags = 10;
  p.n_neg_bags = 10;
  EXPECT_EQ(WriteMilCsv(Synthesize(p, 5)), WriteMilCsv(Synthesize(p, 5)));
  EXPECT_NE(WriteMilCsv(Synthesize(p, 5)), WriteMilCsv(Synthesize(p, 6)));
}

TEST(SynthesizeTest, RejectsInvalidParams) {
  SynthParams p;
  p.witness_rate = 0.0;
  EXPECT_THROW(Synthesize(p, 1), MimnError);
  p = SynthParams{};
  p.neg_contamination = 1.0;
  EXPECT_THROW(Synthesize(p, 1), MimnError);
  p = SynthParams{};
  p.separation = 0.0;
  EXPECT_THROW(Synthesize(p, 1), MimnError);
}

Dataset Numbered(int n, int positives) {
  Dataset d;
  for (int i = 0; i < n; ++i) {
    d.bags.push_back(Bag{"b" + std::to_string(i),
                         i < positives ? BagLabel::kPositive
                                       : BagLabel::kNegative,
                         {{static_cast<double>(i)}}});
  }
  return d;
}

void ExpectPartition(const Dataset& d, const std::vector<Fold>& folds) {
  std::multiset<std::string> tested;
  std::size_t lo = d.size(), hi = 0;
  for (const Fold& f : folds) {
    lo = std::min(lo, f.test.size());
    hi = std::max(hi, f.test.size());
    EXPECT_EQ(f.train.size() + f.test.size(), d.size());
    std::set<std::string> train_ids;
    for (const Bag& b : f.train.bags) train_ids.insert(b.id);
    for (const Bag& b : f.test.bags) {
      EXPECT_EQ(train_ids.count(b.id), 0u);
      tested.insert(b.id);
    }
  }
  EXPECT_LE(hi - lo, 1u);
  std::multiset<std::string> all;
  for (const Bag& b : d.bags) all.insert(b.id);
  EXPECT_EQ(tested, all);
}

TEST(KFoldTest, TenFoldsOfTen) {
  const Dataset d = Numbered(100, 50);
  const std::vector<Fold> folds = KFoldSplit(d, 10, 1);
  ASSERT_EQ(folds.size(), 10u);
  for (const Fold& f : folds) {
    EXPECT_EQ(f.test.size(), 10u);
    EXPECT_EQ(f.test.CountLabel(BagLabel::kPositive), 5);
  }
  ExpectPartition(d, folds);
}

TEST(KFoldTest, LeaveOneOut) {
  const Dataset d = Numbered(24, 12);
  const std::vector<Fold> folds = KFoldSplit(d, 24, 3);
  ASSERT_EQ(folds.size(), 24u);
  for (const Fold& f : folds) EXPECT_EQ(f.test.size(), 1u);
  ExpectPartition(d, folds);
}

TEST(KFoldTest, PartitionForAllK) {
  const Dataset d = Numbered(37, 11);
  for (int k = 2; k <= 37; ++k) {
    for (bool stratified : {true, false}) {
      ExpectPartition(d, KFoldSplit(d, k, 7, stratified));
    }
  }
}

TEST(KFoldTest, StratifiedTrainingFoldsKeepBothClasses) {
  const Dataset d = Numbered(24, 4);
  for (const Fold& f : KFoldSplit(d, 4, 2)) {
    EXPECT_EQ(f.test.CountLabel(BagLabel::kPositive), 1);
    EXPECT_EQ(f.train.CountLabel(BagLabel::kPositive), 3);
  }
}

TEST(KFoldTest, DeterministicAndOrderPreserving) {
  const Dataset d = Numbered(30, 10);
  const std::vector<Fold> a = KFoldSplit(d, 5, 11);
  const std::vector<Fold> b = KFoldSplit(d, 5, 11);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(WriteMilCsv(a[i].test), WriteMilCsv(b[i].test));
    for (std::size_t j = 1; j < a[i].train.size(); ++j) {
      EXPECT_LT(a[i].train.bags[j - 1].instances[0][0],
                a[i].train.bags[j].instances[0][0]);
    }
  }
}

TEST(KFoldTest, RejectsOutOfRangeK) {
  const Dataset d = Numbered(5, 2);
  EXPECT_THROW(KFoldSplit(d, 1, 0), MimnError);
  EXPECT_THROW(KFoldSplit(d, 6, 0), MimnError);
}

}  // namespace
}  // namespace mimn
