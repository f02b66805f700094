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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "mimn/cli.h"
#include "mimn/dataset.h"
#include "mimn/error.h"
#include "mimn/numeric_format.h"

namespace mimn {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mimn_cli_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  // Small separable data set written through the CLI itself.
  std::string Data(const std::string& name = "d.csv", int seed = 1) {
    const CliRun r = Cli({"synth", "--bags", "20,20", "--bag-size", "6",
                       "--witness", "0.3", "--dim", "5", "--sep", "6",
                       "--seed", std::to_string(seed), "--out", Path(name)});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    return Path(name);
  }

  fs::path dir_;
};

TEST(ExitCodeTest, Mapping) {
  EXPECT_EQ(ExitCodeFor(ErrorCode::kInvalidArgument), 2);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kDimensionMismatch), 3);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kParse), 3);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kIo), 3);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kModelFormat), 3);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kTraining), 4);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kInfeasible), 4);
}

TEST_F(CliTest, SynthWritesExpectedFile) {
  const CliRun r = Cli({"synth", "--bags", "100,100", "--bag-size", "10",
                     "--witness", "0.3", "--dim", "20", "--seed", "1", "--out",
                     Path("s.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Dataset d = ReadMilCsvFile(Path("s.csv"));
  EXPECT_EQ(d.size(), 200u);
  EXPECT_EQ(d.dim(), 20u);
  Cli({"synth", "--bags", "100,100", "--bag-size", "10", "--witness", "0.3",
       "--dim", "20", "--seed", "1", "--out", Path("t.csv")});
  EXPECT_EQ(Slurp(Path("s.csv")), Slurp(Path("t.csv")));
}

TEST_F(CliTest, SynthRejectsBadParameters) {
  EXPECT_EQ(Cli({"synth", "--witness", "0", "--out", Path("x.csv")}).code,
            kExitUsage);
  EXPECT_EQ(Cli({"synth", "--bags", "10", "--out", Path("x.csv")}).code,
            kExitUsage);
}

TEST_F(CliTest, TrainIsDeterministicAndLogs) {
  const std::string data = Data();
  const std::vector<std::string> args = {
      "train", "--data", data, "--potential", "rmimn:0.5", "--map", "linear",
      "--lambda", "1.0", "--iters", "300", "--seed", "7", "--out"};
  std::vector<std::string> a = args, b = args;
  a.push_back(Path("a.json"));
  b.push_back(Path("b.json"));
  const CliRun ra = Cli(a);
  ASSERT_EQ(ra.code, kExitOk) << ra.err;
  ASSERT_EQ(Cli(b).code, kExitOk);
  EXPECT_EQ(Slurp(Path("a.json")), Slurp(Path("b.json")));
  EXPECT_NE(ra.err.find("iteration 0 objective 40\n"), std::string::npos);
  EXPECT_NE(ra.err.find("best iteration "), std::string::npos);
  EXPECT_TRUE(ra.out.empty());
  EXPECT_NO_THROW(nlohmann::json::parse(Slurp(Path("a.json"))));
}

TEST_F(CliTest, TrainErrors) {
  const std::string data = Data();
  const CliRun rho = Cli({"train", "--data", data, "--potential", "rmimn:0",
                       "--out", Path("m.json")});
  EXPECT_EQ(rho.code, kExitUsage);
  EXPECT_NE(rho.err.find("rho must be in (0,1]"), std::string::npos);
  EXPECT_EQ(Cli({"train", "--data", data, "--map", "rbf", "--out",
                 Path("m.json")}).code,
            kExitUsage);
  EXPECT_EQ(Cli({"train", "--data", data, "--iters", "0", "--out",
                 Path("m.json")}).code,
            kExitUsage);
  EXPECT_EQ(Cli({"train", "--data", Path("missing.csv"), "--out",
                 Path("m.json")}).code,
            kExitData);

  std::ofstream(Path("bad.csv")) << "b1,1,0.5\nb1,-1,0.5\n";
  const CliRun parse = Cli({"train", "--data", Path("bad.csv"), "--out",
                         Path("m.json")});
  EXPECT_EQ(parse.code, kExitData);
  EXPECT_NE(parse.err.find("inconsistent bag label at line 2"),
            std::string::npos);

  std::ofstream(Path("one.csv")) << "b1,1,0.5\nb2,1,0.7\n";
  EXPECT_EQ(Cli({"train", "--data", Path("one.csv"), "--out",
                 Path("m.json")}).code,
            kExitTraining);
  EXPECT_EQ(Cli({"train", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(Cli({}).code, kExitUsage);
}

TEST_F(CliTest, PredictAgreesWithEval) {
  const std::string data = Data();
  ASSERT_EQ(Cli({"train", "--data", data, "--potential", "mimn", "--out",
                 Path("m.json")}).code,
            kExitOk);
  const CliRun pred = Cli({"predict", "--model", Path("m.json"), "--data", data});
  ASSERT_EQ(pred.code, kExitOk) << pred.err;
  const CliRun eval = Cli({"eval", "--model", Path("m.json"), "--data", data});
  ASSERT_EQ(eval.code, kExitOk) << eval.err;

  const Dataset d = ReadMilCsvFile(data);
  std::istringstream lines(pred.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "bag_id,predicted,margin,k_star");
  int correct = 0, rows = 0;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string id, label, margin, k;
    std::getline(fields, id, ',');
    std::getline(fields, label, ',');
    std::getline(fields, margin, ',');
    std::getline(fields, k, ',');
    const double mg = std::stod(margin);
    if (label == "1") {
      EXPECT_GT(mg, 0.0);
    } else {
      EXPECT_EQ(label, "-1");
      EXPECT_LE(mg, 0.0);
    }
    EXPECT_EQ(id, d.bags[rows].id);
    if (std::stoi(label) == ToInt(d.bags[rows].label)) ++correct;
    ++rows;
  }
  EXPECT_EQ(rows, 40);
  EXPECT_EQ(eval.out.substr(0, eval.out.find('\n')),
            "accuracy " + FormatShortest(correct / 40.0) + " (" +
                std::to_string(correct) + "/40)");

  ASSERT_EQ(Cli({"predict", "--model", Path("m.json"), "--data", data,
                 "--out", Path("p.csv")}).code,
            kExitOk);
  EXPECT_EQ(Slurp(Path("p.csv")), pred.out);
}

TEST_F(CliTest, PredictErrors) {
  const std::string data = Data();
  ASSERT_EQ(Cli({"train", "--data", data, "--out", Path("m.json")}).code,
            kExitOk);
  std::ofstream(Path("wide.csv")) << "b1,1,0.5,0.5,0.5,0.5,0.5,0.5\n";
  EXPECT_EQ(Cli({"predict", "--model", Path("m.json"), "--data",
                 Path("wide.csv")}).code,
            kExitData);

  nlohmann::json doc = nlohmann::json::parse(Slurp(Path("m.json")));
  doc["feature_map"]["kind"] = "wavelet";
  std::ofstream(Path("bad.json")) << doc.dump();
  const CliRun r = Cli({"predict", "--model", Path("bad.json"), "--data", data});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("unsupported feature_map"), std::string::npos);
}

TEST_F(CliTest, CrossValidation) {
  const std::string data = Data();
  const CliRun r = Cli({"cv", "--data", data, "--potential", "mimn", "--map",
                     "linear", "--folds", "4", "--seed", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("best mimn lambda 1\nmean accuracy "), std::string::npos);
  EXPECT_EQ(Cli({"cv", "--data", data, "--potential", "mimn", "--folds", "4",
                 "--seed", "1"}).out,
            r.out);

  const CliRun grid = Cli({"cv", "--data", data, "--k-grid", "3,5",
                        "--rho-grid", "0.2", "--lambda-grid", "1,0.1",
                        "--folds", "4", "--iters", "40", "--report-csv",
                        Path("r.csv")});
  ASSERT_EQ(grid.code, kExitOk) << grid.err;
  EXPECT_NE(grid.out.find("gmimn:5"), std::string::npos);
  EXPECT_NE(grid.out.find("rmimn:0.2"), std::string::npos);
  const std::string csv = Slurp(Path("r.csv"));
  EXPECT_EQ(csv.rfind("potential,lambda,map,fold,accuracy\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 6 * 5);

  EXPECT_EQ(Cli({"cv", "--data", data, "--folds", "1"}).code, kExitUsage);
  EXPECT_EQ(Cli({"cv", "--data", data, "--folds", "41"}).code, kExitUsage);
  EXPECT_EQ(Cli({"cv", "--data", data, "--mode", "vote"}).code, kExitUsage);
}

TEST_F(CliTest, SelfCheck) {
  const CliRun r = Cli({"selfcheck", "--cases", "200", "--max-bag", "12",
                     "--seed", "3", "--gradient-cases", "20"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_EQ(r.out.rfind("200/200 inference, 20/20 gradient\n", 0), 0u);
  EXPECT_EQ(Cli({"selfcheck", "--cases", "0"}).code, kExitUsage);
  EXPECT_EQ(Cli({"selfcheck", "--max-bag", "40"}).code, kExitUsage);
  const CliRun replay = Cli({"selfcheck", "--replay", "12345"});
  EXPECT_EQ(replay.code, kExitOk);
  EXPECT_NE(replay.out.find("case 12345: ok"), std::string::npos);
}

}  // namespace
}  // namespace mimn
