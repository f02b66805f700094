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

#include "mimn/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "mimn/error.h"
#include "mimn/numeric_format.h"

namespace mimn {

int Dataset::CountLabel(BagLabel y) const {
  return static_cast<int>(std::count_if(
      bags.begin(), bags.end(), [y](const Bag& b) { return b.label == y; }));
}

void ValidateDataset(const Dataset& dataset) {
  if (dataset.bags.empty()) {
    throw MimnError(ErrorCode::kInvalidArgument, "dataset has no bags");
  }
  std::unordered_set<std::string> ids;
  const std::size_t d = dataset.bags.front().dim();
  for (const Bag& bag : dataset.bags) {
    ValidateBag(bag);
    if (bag.dim() != d) {
      throw MimnError(ErrorCode::kDimensionMismatch,
                      "bag '" + bag.id + "' has dimension " +
                          std::to_string(bag.dim()) + ", expected " +
                          std::to_string(d));
    }
    if (!ids.insert(bag.id).second) {
      throw MimnError(ErrorCode::kInvalidArgument,
                      "duplicate bag id '" + bag.id + "'");
    }
  }
}

namespace {

[[noreturn]] void ParseFail(const std::string& what, std::size_t line) {
  throw MimnError(ErrorCode::kParse, what + " at line " + std::to_string(line));
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    fields.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

}  // namespace

Dataset ParseMilCsv(std::string_view text) {
  Dataset dataset;
  std::unordered_map<std::string, std::size_t> index_of;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  bool saw_data = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      // Only a trailing newline may leave an empty final line.
      if (pos >= text.size()) break;
      ParseFail("blank line", line_no);
    }

    const std::vector<std::string_view> fields = SplitFields(line);
    if (fields.size() < 3) {
      ParseFail("expected bag_id,label and at least one feature", line_no);
    }
    if (line_no == 1 && !ParseDouble(fields[2])) continue;  // header

    const std::string id(fields[0]);
    if (id.empty()) ParseFail("empty bag id", line_no);

    int label_value = 0;
    std::string_view label_text = fields[1];
    if (!label_text.empty() && label_text.front() == '+') {
      label_text.remove_prefix(1);
    }
    const auto lr = std::from_chars(
        label_text.data(), label_text.data() + label_text.size(), label_value);
    if (label_text.empty() || lr.ec != std::errc() ||
        lr.ptr != label_text.data() + label_text.size() ||
        (label_value != 1 && label_value != -1)) {
      ParseFail("label must be -1 or 1", line_no);
    }
    const BagLabel label = BagLabelFromInt(label_value);

    FeatureVector x;
    x.reserve(fields.size() - 2);
    for (std::size_t f = 2; f < fields.size(); ++f) {
      const std::optional<double> v = ParseDouble(fields[f]);
      if (!v || !std::isfinite(*v)) {
        ParseFail("invalid feature value '" + std::string(fields[f]) + "'",
                  line_no);
      }
      x.push_back(*v);
    }
    if (!saw_data) {
      dim = x.size();
      saw_data = true;
    } else if (x.size() != dim) {
      ParseFail("ragged row: expected " + std::to_string(dim) +
                    " features, got " + std::to_string(x.size()),
                line_no);
    }

    auto [it, inserted] = index_of.try_emplace(id, dataset.bags.size());
    if (inserted) {
      Bag bag;
      bag.id = id;
      bag.label = label;
      dataset.bags.push_back(std::move(bag));
    } else if (dataset.bags[it->second].label != label) {
      ParseFail("inconsistent bag label", line_no);
    }
    dataset.bags[it->second].instances.push_back(std::move(x));
  }
  if (!saw_data) ParseFail("empty file", std::max<std::size_t>(line_no, 1));
  return dataset;
}

std::string WriteMilCsv(const Dataset& dataset) {
  std::string out;
  for (const Bag& bag : dataset.bags) {
    for (const FeatureVector& x : bag.instances) {
      out += bag.id;
      out += bag.label == BagLabel::kPositive ? ",1" : ",-1";
      for (double v : x) {
        out += ',';
        out += FormatShortest(v);
      }
      out += '\n';
    }
  }
  return out;
}

Dataset ReadMilCsvFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw MimnError(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseMilCsv(buffer.str());
  } catch (const MimnError& e) {
    throw MimnError(e.code(), path.string() + ": " + e.what());
  }
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw MimnError(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw MimnError(ErrorCode::kIo, "failed writing '" + path.string() + "'");
  }
}

void SynthParams::Validate() const {
  auto fail = [](const std::string& what) {
    throw MimnError(ErrorCode::kInvalidArgument, what);
  };
  if (n_pos_bags < 0 || n_neg_bags < 0 || n_pos_bags + n_neg_bags < 1) {
    fail("bag counts must be >= 0 with at least one bag");
  }
  if (bag_size < 1) fail("bag size must be >= 1");
  if (dim < 1) fail("dimension must be >= 1");
  if (!(witness_rate > 0.0 && witness_rate <= 1.0)) {
    fail("witness rate must be in (0,1]");
  }
  if (!(neg_contamination >= 0.0 && neg_contamination < 1.0)) {
    fail("contamination must be in [0,1)");
  }
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    fail("separation must be > 0");
  }
  if (!(noise_sd > 0.0) || !std::isfinite(noise_sd)) {
    fail("noise sd must be > 0");
  }
}

SyntheticData SynthesizeWithTruth(const SynthParams& params,
                                  std::uint64_t seed) {
  params.Validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, params.noise_sd);
  const int m = params.bag_size;
  const int witnesses = std::min(
      m, static_cast<int>(std::ceil(params.witness_rate * m - 1e-9)));
  const int contaminated =
      static_cast<int>(std::floor(params.neg_contamination * m + 1e-9));
  // Concept and background means sit at +-separation/2 along the
  // alternating-sign unit vector (1, -1, 1, ...) / sqrt(d).
  FeatureVector concept_mean(params.dim);
  for (int j = 0; j < params.dim; ++j) {
    concept_mean[j] =
        (j % 2 == 0 ? 0.5 : -0.5) * params.separation / std::sqrt(params.dim);
  }

  struct Draft {
    Bag bag;
    std::vector<bool> concept_mask;
  };
  std::vector<Draft> drafts;
  const int total = params.n_pos_bags + params.n_neg_bags;
  drafts.reserve(total);
  for (int b = 0; b < total; ++b) {
    const bool positive = b < params.n_pos_bags;
    const int n_concept = positive ? witnesses : contaminated;
    Draft draft;
    draft.bag.label = positive ? BagLabel::kPositive : BagLabel::kNegative;
    draft.concept_mask.assign(m, false);
    std::fill_n(draft.concept_mask.begin(), n_concept, true);
    std::shuffle(draft.concept_mask.begin(), draft.concept_mask.end(), rng);
    for (int i = 0; i < m; ++i) {
      FeatureVector x(params.dim);
      const double sign = draft.concept_mask[i] ? 1.0 : -1.0;
      for (int j = 0; j < params.dim; ++j) {
        x[j] = sign * concept_mean[j] + noise(rng);
      }
      draft.bag.instances.push_back(std::move(x));
    }
    drafts.push_back(std::move(draft));
  }
  std::shuffle(drafts.begin(), drafts.end(), rng);

  const int width = static_cast<int>(std::to_string(total).size());
  SyntheticData data;
  for (int b = 0; b < total; ++b) {
    std::string number = std::to_string(b);
    drafts[b].bag.id =
        "bag" + std::string(width - number.size(), '0') + number;
    data.dataset.bags.push_back(std::move(drafts[b].bag));
    data.is_concept.push_back(std::move(drafts[b].concept_mask));
  }
  return data;
}

Dataset Synthesize(const SynthParams& params, std::uint64_t seed) {
  return SynthesizeWithTruth(params, seed).dataset;
}

std::vector<Fold> KFoldSplit(const Dataset& dataset, int k, std::uint64_t seed,
                             bool stratified) {
  const int n = static_cast<int>(dataset.size());
  if (k < 2 || k > n) {
    throw MimnError(ErrorCode::kInvalidArgument,
                    "fold count must be in [2, " + std::to_string(n) +
                        "], got " + std::to_string(k));
  }
  std::mt19937_64 rng(seed);
  std::vector<int> dealt;
  dealt.reserve(n);
  if (stratified) {
    for (BagLabel y : {BagLabel::kPositive, BagLabel::kNegative}) {
      std::vector<int> group;
      for (int i = 0; i < n; ++i) {
        if (dataset.bags[i].label == y) group.push_back(i);
      }
      std::shuffle(group.begin(), group.end(), rng);
      dealt.insert(dealt.end(), group.begin(), group.end());
    }
  } else {
    dealt.resize(n);
    std::iota(dealt.begin(), dealt.end(), 0);
    std::shuffle(dealt.begin(), dealt.end(), rng);
  }
  std::vector<int> fold_of(n);
  for (int r = 0; r < n; ++r) fold_of[dealt[r]] = r % k;

  std::vector<Fold> folds(k);
  for (int i = 0; i < n; ++i) {
    for (int f = 0; f < k; ++f) {
      (fold_of[i] == f ? folds[f].test : folds[f].train)
          .bags.push_back(dataset.bags[i]);
    }
  }
  return folds;
}

}  // namespace mimn
