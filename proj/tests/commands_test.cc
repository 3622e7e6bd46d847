// Copyright 2026 The ldpfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpfair/commands.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"

namespace ldpfair {
namespace {

namespace fs = std::filesystem;

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CommandsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ldpfair_cmd_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  RunConfig Config(std::initializer_list<std::pair<const char*, const char*>>
                       kv = {}) {
    RunConfig cfg;
    for (const auto& [k, v] : kv) EXPECT_TRUE(cfg.Set(k, v).ok()) << k;
    return cfg;
  }

  fs::path dir_;
};

TEST_F(CommandsTest, Names) {
  const std::vector<std::string> want = {"fetch-data", "verify",   "solve",
                                         "frontier",   "train",    "evaluate",
                                         "sweep",      "report"};
  EXPECT_EQ(CommandNames(), want);
}

TEST_F(CommandsTest, UnknownCommand) {
  const absl::Status st = RunCommand("bogus", RunConfig(), dir_.string(), 1);
  EXPECT_EQ(st.code(), absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(ExitCodeFor(st), 2);
  EXPECT_EQ(ExitCodeFor(absl::OkStatus()), 0);
  EXPECT_EQ(ExitCodeFor(absl::AbortedError("x")), 3);
  EXPECT_EQ(ExitCodeFor(absl::UnavailableError("x")), 4);
}

TEST_F(CommandsTest, VerifyPassesWithDefaults) {
  RunConfig cfg = Config({{"verify_encoders", "30"}, {"verify_sources", "4"}});
  std::string log;
  ASSERT_TRUE(RunCommand("verify", cfg, dir_.string(), 1, &log).ok()) << log;
  const auto j = nlohmann::json::parse(ReadFile(dir_ / "verify.json"));
  EXPECT_TRUE(j["all_pass"].get<bool>());
  EXPECT_EQ(j["config_hash"], cfg.Hash());
  EXPECT_FALSE(j["checks"].empty());
}

TEST_F(CommandsTest, VerifyFailsOnNonPrivateChannel) {
  fs::create_directories(dir_);
  const fs::path ch = dir_ / "bad.channel";
  std::ofstream(ch) << "2 2\n0.99 0.01\n0.01 0.99\n";
  RunConfig cfg = Config({{"verify_encoders", "3"},
                          {"verify_sources", "2"},
                          {"verify_epsilons", "1"},
                          {"epsilon", "1"}});
  ASSERT_TRUE(cfg.Set("channel_file", ch.string()).ok());
  std::string log;
  const absl::Status st = RunCommand("verify", cfg, dir_.string(), 1, &log);
  EXPECT_EQ(ExitCodeFor(st), 3) << st;
  EXPECT_NE(std::string(st.message()).find("verify_ldp"), std::string::npos);
}

TEST_F(CommandsTest, EvaluateNeedsCheckpoint) {
  RunConfig cfg = Config({{"dataset", "synthetic"}});
  const absl::Status st = RunCommand("evaluate", cfg, dir_.string(), 1);
  EXPECT_EQ(st.code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_NE(std::string(st.message()).find("no checkpoint"), std::string::npos);
}

TEST_F(CommandsTest, InvalidConfigIsRejected) {
  RunConfig cfg = Config({{"epsilon", "-1"}});
  EXPECT_EQ(ExitCodeFor(RunCommand("solve", cfg, dir_.string(), 1)), 2);
  EXPECT_EQ(RunCommand("solve", RunConfig(), dir_.string(), 0).code(),
            absl::StatusCode::kInvalidArgument);
}

TEST_F(CommandsTest, SolveAndFrontierAreReproducible) {
  RunConfig cfg = Config({{"beta", "0.1,1,10"},
                          {"restarts", "2"},
                          {"iterations", "300"},
                          {"epsilon", "1"}});
  const fs::path a = dir_ / "a", b = dir_ / "b";
  for (const fs::path& p : {a, b}) {
    ASSERT_TRUE(RunCommand("solve", cfg, p.string(), 1).ok());
    ASSERT_TRUE(RunCommand("frontier", cfg, p.string(), 1).ok());
  }
  EXPECT_EQ(ReadFile(a / "solve.json"), ReadFile(b / "solve.json"));
  EXPECT_EQ(ReadFile(a / "frontier.csv"), ReadFile(b / "frontier.csv"));
  const std::string csv = ReadFile(a / "frontier.csv");
  EXPECT_EQ(csv.rfind("# config_hash=" + cfg.Hash(), 0), 0u);
  EXPECT_NE(csv.find("beta,epsilon,gamma,Gamma,Omega,nu,ixz,converged"),
            std::string::npos);
  const auto j = nlohmann::json::parse(ReadFile(a / "solve.json"));
  EXPECT_EQ(j["config_hash"], cfg.Hash());
  EXPECT_LE(j["point"]["ixz"].get<double>(), 1.0 + 1e-9);
}

TEST_F(CommandsTest, TrainEvaluateSweepReportOnSynthetic) {
  RunConfig cfg = Config({{"dataset", "synthetic"},
                          {"epochs", "2"},
                          {"batch", "128"},
                          {"hidden", "16"},
                          {"mine_iterations", "200"},
                          {"mine_batch", "128"},
                          {"attacker_epochs", "2"},
                          {"epsilon", "5"},
                          {"beta", "1"},
                          {"seeds", "0"},
                          {"modes", "continuous,discrete"}});
  std::string log;
  const absl::Status trained = RunCommand("train", cfg, dir_.string(), 1, &log);
  ASSERT_TRUE(trained.ok()) << trained << log;
  EXPECT_TRUE(fs::exists(dir_ / "model.ckpt"));
  EXPECT_EQ(ReadFile(dir_ / "history.csv").rfind("# config_hash=", 0), 0u);
  ASSERT_TRUE(RunCommand("evaluate", cfg, dir_.string(), 1, &log).ok()) << log;
  const auto rep = nlohmann::json::parse(ReadFile(dir_ / "report.json"));
  EXPECT_EQ(rep["config_hash"], cfg.Hash());

  // Continuous encoding at epsilon = 0 is undefined; that cell fails and the
  // rest of the sweep still runs.
  ASSERT_TRUE(cfg.Set("epsilon", "0,5").ok());
  ASSERT_TRUE(RunCommand("sweep", cfg, dir_.string(), 1, &log).ok()) << log;
  EXPECT_NE(log.find("failed"), std::string::npos);
  std::istringstream rows(ReadFile(dir_ / "sweep.csv"));
  std::string line;
  int data_rows = 0, nan_rows = 0;
  while (std::getline(rows, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("beta", 0) == 0) continue;
    ++data_rows;
    if (line.find("nan") != std::string::npos) {
      ++nan_rows;
      EXPECT_NE(line.find(",0,continuous,"), std::string::npos) << line;
    }
  }
  EXPECT_EQ(data_rows, 4);
  EXPECT_EQ(nan_rows, 1);
  ASSERT_TRUE(RunCommand("report", cfg, dir_.string(), 1, &log).ok()) << log;
  EXPECT_NE(ReadFile(dir_ / "tradeoff.csv")
                .find("mode,epsilon,beta,runs,accuracy,delta_dp"),
            std::string::npos);
}

}  // namespace
}  // namespace ldpfair
