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

#include "ldpfair/config.h"

#include <cmath>
#include <filesystem>

#include "gtest/gtest.h"
#include "ldpfair/discrete_source.h"

namespace ldpfair {
namespace {

TEST(ParseGridTest, Logspace) {
  auto g = ParseGrid("logspace(-3,3,7)");
  ASSERT_TRUE(g.ok());
  ASSERT_EQ(g->size(), 7u);
  for (int i = 0; i < 7; ++i) EXPECT_NEAR((*g)[i], std::pow(10.0, i - 3), 1e-12);
}

TEST(ParseGridTest, LinspaceAndLists) {
  EXPECT_EQ(*ParseGrid("linspace(0, 1, 3)"), (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(*ParseGrid(" 0.5, 5,1000 "), (std::vector<double>{0.5, 5, 1000}));
  EXPECT_EQ(*ParseGrid("2"), (std::vector<double>{2}));
}

TEST(ParseGridTest, RejectsMalformed) {
  for (const char* bad : {"logspace(1,2)", "logspace(1,2,0)", "linspace 1,2,3",
                          "1,,2", "abc", "logspace(1,2,2.5)", "nan"}) {
    EXPECT_FALSE(ParseGrid(bad).ok()) << bad;
  }
}

TEST(RunConfigTest, DefaultsValidate) {
  const RunConfig cfg;
  EXPECT_TRUE(cfg.Validate().ok());
  EXPECT_EQ(cfg.GetInt("epochs"), 150);
  EXPECT_EQ(cfg.GetInt("batch"), 512);
  EXPECT_DOUBLE_EQ(cfg.GetDouble("lr"), 1e-3);
  EXPECT_DOUBLE_EQ(cfg.GetDouble("t"), 0.5);
  EXPECT_EQ(cfg.GetInt("d"), 2);
  EXPECT_EQ(cfg.GetSeeds(), std::vector<std::uint64_t>{0});
}

TEST(RunConfigTest, ParsesCommentsAndGrids) {
  auto cfg = RunConfig::Parse(
      "# experiment\n"
      "dataset = synthetic\n"
      "beta=logspace(-1,1,3)  # trailing comment\n"
      "\n"
      "seeds=0,1,2\n");
  ASSERT_TRUE(cfg.ok()) << cfg.status();
  EXPECT_EQ(cfg->GetString("dataset"), "synthetic");
  EXPECT_EQ(cfg->GetList("beta").size(), 3u);
  EXPECT_EQ(cfg->GetSeeds(), (std::vector<std::uint64_t>{0, 1, 2}));
  EXPECT_TRUE(cfg->IsSet("beta"));
  EXPECT_FALSE(cfg->IsSet("epochs"));
}

TEST(RunConfigTest, RejectsUnknownKeysAndBadLines) {
  EXPECT_EQ(RunConfig::Parse("nonsense=1\n").status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(RunConfig::Parse("epochs\n").ok());
  EXPECT_FALSE(RunConfig::Parse("epochs=ten\n").ok());
  RunConfig cfg;
  EXPECT_FALSE(cfg.Set("beta", "logspace(1)").ok());
}

TEST(RunConfigTest, ValidateCatchesCrossKeyErrors) {
  RunConfig cfg;
  ASSERT_TRUE(cfg.Set("dataset", "compas").ok());
  EXPECT_FALSE(cfg.Validate().ok());
  ASSERT_TRUE(cfg.Set("compas_csv", "x.csv").ok());
  EXPECT_TRUE(cfg.Validate().ok());
  ASSERT_TRUE(cfg.Set("epsilon", "-1").ok());
  EXPECT_FALSE(cfg.Validate().ok());
}

TEST(RunConfigTest, HashTracksCanonicalForm) {
  RunConfig a, b;
  EXPECT_EQ(a.Hash(), b.Hash());
  EXPECT_EQ(a.Hash().size(), 16u);
  ASSERT_TRUE(b.Set("epochs", "149").ok());
  EXPECT_NE(a.Hash(), b.Hash());
  // Order of assignment does not matter.
  auto c = RunConfig::Parse("seeds=1\nbeta=2\n");
  auto d = RunConfig::Parse("beta=2\nseeds=1\n");
  EXPECT_EQ(c->Hash(), d->Hash());
  EXPECT_EQ(c->Canonical(), d->Canonical());
}

TEST(RunConfigTest, CanonicalIsSortedAndComplete) {
  const RunConfig cfg;
  const std::string text = cfg.Canonical();
  std::vector<std::string> keys;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    keys.push_back(text.substr(start, text.find('=', start) - start));
    start = end + 1;
  }
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(keys.size(), RunConfig::Keys().size());
}

TEST(RunConfigTest, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "ldpfair_cfg.txt";
  ASSERT_TRUE(WriteFile(path.string(), "epochs=3\n").ok());
  auto cfg = RunConfig::Load(path.string());
  ASSERT_TRUE(cfg.ok());
  EXPECT_EQ(cfg->GetInt("epochs"), 3);
  std::filesystem::remove(path);
  EXPECT_EQ(RunConfig::Load("/nonexistent/cfg").status().code(),
            absl::StatusCode::kInvalidArgument);
}

}  // namespace
}  // namespace ldpfair
