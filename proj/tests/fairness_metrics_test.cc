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

#include "ldpfair/fairness_metrics.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"

namespace ldpfair {
namespace {

TEST(DeltaDpTest, ConstantPredictorIsFair) {
  const std::vector<int> p = {1, 1, 1, 1}, s = {0, 1, 0, 1};
  EXPECT_EQ(*DeltaDp(p, s), 0.0);
}

TEST(DeltaDpTest, PredictorEqualToSensitive) {
  const std::vector<int> s = {0, 1, 1, 0, 1};
  EXPECT_EQ(*DeltaDp(s, s), 1.0);
}

TEST(DeltaDpTest, HandCountedTable) {
  // (pred, s): (1,0) x3, (0,0) x1, (1,1) x1, (0,1) x3.
  const std::vector<int> p = {1, 1, 1, 0, 1, 0, 0, 0};
  const std::vector<int> s = {0, 0, 0, 0, 1, 1, 1, 1};
  EXPECT_DOUBLE_EQ(*DeltaDp(p, s), 0.5);
}

TEST(DeltaDpTest, EmptyGroupIsAnError) {
  const std::vector<int> p = {1, 0}, s = {1, 1};
  EXPECT_EQ(DeltaDp(p, s).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(DeltaEoTest, PerfectAndConstantPredictors) {
  const std::vector<int> u = {0, 1, 0, 1, 1, 0}, s = {0, 0, 1, 1, 0, 1};
  EXPECT_EQ(*DeltaEo(u, s, u), 0.0);
  const std::vector<int> c(6, 0);
  EXPECT_EQ(*DeltaEo(c, s, u), 0.0);
}

TEST(DeltaEoTest, HandCountedTable) {
  // u = 1: S=0 rate 1, S=1 rate 1/2. u = 0: both rates 1/2.
  const std::vector<int> u = {1, 1, 1, 1, 0, 0, 0, 0};
  const std::vector<int> s = {0, 0, 1, 1, 0, 0, 1, 1};
  const std::vector<int> p = {1, 1, 1, 0, 1, 0, 0, 1};
  EXPECT_DOUBLE_EQ(*DeltaEo(p, s, u), 0.5);
}

TEST(DeltaEoTest, EmptyCellIsAnError) {
  const std::vector<int> u = {1, 1, 0}, s = {0, 1, 0}, p = {1, 0, 1};
  EXPECT_EQ(DeltaEo(p, s, u).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(AccuracyTest, PlainAndBalanced) {
  const std::vector<int> y = {0, 0, 0, 1}, p = {0, 0, 0, 0};
  EXPECT_DOUBLE_EQ(Accuracy(p, y), 0.75);
  EXPECT_DOUBLE_EQ(BalancedAccuracy(p, y), 0.5);
  EXPECT_DOUBLE_EQ(BalancedAccuracy(y, y), 1.0);
}

TEST(DownstreamTest, ConstantLabelsAreDegenerate) {
  const Matrix z = Matrix::Random(50, 2);
  const std::vector<int> y(50, 1);
  auto r = TrainDownstream(z, y, z, y, 2, 0);
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->degenerate);
  EXPECT_EQ(r->accuracy, 1.0);
}

TEST(DownstreamTest, SeparableBlobs) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 0.3);
  auto blobs = [&](int n, Matrix* z, std::vector<int>* y) {
    *z = Matrix(n, 2);
    y->resize(n);
    for (int i = 0; i < n; ++i) {
      (*y)[i] = i % 2;
      (*z)(i, 0) = ((*y)[i] ? 2.0 : -2.0) + g(rng);
      (*z)(i, 1) = g(rng);
    }
  };
  Matrix ztr, zte;
  std::vector<int> ytr, yte;
  blobs(2000, &ztr, &ytr);
  blobs(1000, &zte, &yte);
  auto r = TrainDownstream(ztr, ytr, zte, yte, 2, 3);
  ASSERT_TRUE(r.ok());
  EXPECT_FALSE(r->degenerate);
  EXPECT_GE(r->accuracy, 0.99);
}

TEST(SensitiveAccuracyTest, NoSignalIsChance) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  const int n = 4000;
  Matrix ztr(n, 2), zte(n, 2);
  std::vector<int> str(n), ste(n);
  for (int i = 0; i < n; ++i) {
    ztr(i, 0) = g(rng);
    ztr(i, 1) = g(rng);
    zte(i, 0) = g(rng);
    zte(i, 1) = g(rng);
    str[i] = i % 2;
    ste[i] = (i / 2) % 2;
  }
  EXPECT_NEAR(*SensitiveAccuracy(ztr, str, zte, ste, 4), 0.5, 0.03);
}

TEST(SensitiveAccuracyTest, EmbeddedSensitiveIsRecovered) {
  const int n = 2000;
  Matrix z(n, 1);
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) {
    s[i] = (i % 3 == 0);
    z(i, 0) = s[i];
  }
  EXPECT_GE(*SensitiveAccuracy(z, s, z, s, 5), 0.99);
}

TEST(SensitiveAccuracyTest, SingleClassIsPrecondition) {
  const Matrix z = Matrix::Random(20, 2);
  const std::vector<int> s(20, 0);
  EXPECT_EQ(SensitiveAccuracy(z, s, z, s, 0).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(AggregateTest, MeanSampleStdMedian) {
  std::vector<EvalReport> runs(3);
  runs[0].accuracy = 0.8;
  runs[1].accuracy = 0.9;
  runs[2].accuracy = 0.4;
  const AggregateReport agg = Aggregate(runs);
  EXPECT_NEAR(agg.accuracy.mean, 0.7, 1e-15);
  EXPECT_NEAR(agg.accuracy.stddev, std::sqrt(0.14 / 2), 1e-12);
  EXPECT_DOUBLE_EQ(agg.accuracy.median, 0.8);
  runs.pop_back();
  EXPECT_NEAR(Aggregate(runs).accuracy.median, 0.85, 1e-15);
  runs.resize(1);
  EXPECT_EQ(Aggregate(runs).accuracy.stddev, 0.0);
}

TEST(AggregateTest, JsonCarriesHash) {
  std::vector<EvalReport> runs(2);
  runs[1].seed = 7;
  const auto j = nlohmann::json::parse(ReportJson(Aggregate(runs), "abc123"));
  EXPECT_EQ(j["config_hash"], "abc123");
  EXPECT_EQ(j["runs"].size(), 2u);
  EXPECT_TRUE(j.contains("accuracy"));
}

TEST(EvaluateModelTest, ZeroBudgetDiscreteIsUninformative) {
  auto data = *GenerateSynthetic(DefaultSyntheticSpec(0));
  ModelSpec spec;
  spec.mode = EncoderMode::kDiscrete;
  spec.layout = data.splits.train.Layout();
  spec.epsilon = 0.0;
  spec.hidden = 20;
  auto model = EncoderModel::Create(spec, 1);
  ASSERT_TRUE(model.ok());
  TrainConfig tc;
  tc.epochs = 3;
  tc.batch_size = 256;
  ASSERT_TRUE(Train(*model, data.splits.train, tc).ok());
  EvalOptions opts;
  opts.attacker.epochs = 3;
  auto rep = EvaluateModel(*model, data.splits.train, data.splits.test, 0, opts);
  ASSERT_TRUE(rep.ok()) << rep.status();
  EXPECT_LE(rep->leakage_isz, 0.02);
  EXPECT_LE(rep->delta_dp, 0.05);
  double pu = 0.0;
  for (int v : data.splits.test.u) pu += v;
  pu /= data.splits.test.rows();
  EXPECT_NEAR(rep->accuracy, std::max(pu, 1 - pu), 0.02);
}

}  // namespace
}  // namespace ldpfair
