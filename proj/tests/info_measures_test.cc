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

#include "ldpfair/info_measures.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace ldpfair {
namespace {

double BinaryEntropy(double p) {
  return -p * std::log(p) - (1 - p) * std::log(1 - p);
}

TEST(EntropyTest, PointMassIsZero) {
  EXPECT_EQ(*Entropy(std::vector<double>{0.0, 1.0, 0.0}), 0.0);
}

TEST(EntropyTest, UniformBinary) {
  EXPECT_NEAR(*Entropy(std::vector<double>{0.5, 0.5}), std::log(2.0), 1e-15);
}

TEST(EntropyTest, QuarterThreeQuarters) {
  const double h = *Entropy(std::vector<double>{0.25, 0.75});
  EXPECT_NEAR(h, BinaryEntropy(0.25), 1e-15);
  EXPECT_NEAR(h, 0.562335, 1e-6);
}

TEST(EntropyTest, RejectsInvalidDistributions) {
  EXPECT_FALSE(Entropy(std::vector<double>{0.5, 0.6}).ok());
  EXPECT_FALSE(Entropy(std::vector<double>{1.2, -0.2}).ok());
  EXPECT_FALSE(Entropy(std::vector<double>{}).ok());
}

TEST(MutualInformationTest, ProductJointIsZero) {
  Vector a(2), b(3);
  a << 0.3, 0.7;
  b << 0.2, 0.5, 0.3;
  EXPECT_NEAR(*MutualInformation(a * b.transpose()), 0.0, 1e-15);
}

TEST(MutualInformationTest, IdentityOnUniformBinary) {
  const Matrix j = Matrix::Identity(2, 2) * 0.5;
  EXPECT_NEAR(*MutualInformation(j), std::log(2.0), 1e-15);
}

TEST(MutualInformationTest, BinarySymmetricChannel) {
  Matrix j(2, 2);
  j << 0.375, 0.125, 0.125, 0.375;
  const double mi = *MutualInformation(j);
  EXPECT_NEAR(mi, std::log(2.0) - BinaryEntropy(0.25), 1e-15);
  EXPECT_NEAR(mi, 0.130812, 1e-6);
}

TEST(MutualInformationTest, SymmetricAndBoundedByEntropies) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const Channel ch = RandomChannel(4, 3, rng, 0.4);
    const JointSourceUSX src = RandomSource(2, 2, 4, t);
    const JointFull joint = *InducedJoint(src, ch);
    const Matrix xz = joint.PairMarginal(Axis::kX, Axis::kZ);
    const double mi = *MutualInformation(xz);
    EXPECT_NEAR(mi, *MutualInformation(Matrix(xz.transpose())), 1e-12);
    EXPECT_GE(mi, 0.0);
    const Vector px = xz.rowwise().sum(), pz = xz.colwise().sum();
    EXPECT_LE(mi, std::min(*Entropy(px), *Entropy(Vector(pz))) + 1e-12);
    // Data processing: I(U;Z) <= I(X;Z).
    EXPECT_LE(*MutualInformation(joint.PairMarginal(Axis::kU, Axis::kZ)),
              mi + 1e-12);
  }
}

TEST(ConditionalMutualInformationTest, CopiedConditionerIsZero) {
  std::mt19937_64 rng(4);
  const Channel ch = RandomChannel(3, 3, rng);
  const Vector px = Vector::Constant(3, 1.0 / 3);
  Array3 xzs(3, 3, 3);
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 3; ++z) xzs.at(x, z, x) = px(x) * ch(x, z);
  EXPECT_NEAR(*ConditionalMutualInformation(xzs), 0.0, 1e-15);
}

TEST(ConditionalMutualInformationTest, IndependentConditionerIsIrrelevant) {
  std::mt19937_64 rng(5);
  const Channel ch = RandomChannel(3, 2, rng);
  Vector px(3), ps(2);
  px << 0.2, 0.5, 0.3;
  ps << 0.4, 0.6;
  Array3 xzs(3, 2, 2);
  Matrix xz(3, 2);
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 2; ++z) {
      xz(x, z) = px(x) * ch(x, z);
      for (int s = 0; s < 2; ++s) xzs.at(x, z, s) = xz(x, z) * ps(s);
    }
  EXPECT_NEAR(*ConditionalMutualInformation(xzs), *MutualInformation(xz),
              1e-14);
}

TEST(ConditionalMutualInformationTest, ChainRule) {
  // I(X;Z|S) = I(X,S;Z) - I(S;Z) for Z generated from X alone.
  std::mt19937_64 rng(6);
  const JointSourceUSX src = RandomSource(2, 3, 4, 9);
  const JointFull joint = *InducedJoint(src, RandomChannel(4, 3, rng));
  const Array3 xzs = joint.TripleMarginal(Axis::kX, Axis::kZ, Axis::kS);
  Matrix xs_z = Matrix::Zero(12, 3);
  for (int x = 0; x < 4; ++x)
    for (int z = 0; z < 3; ++z)
      for (int s = 0; s < 3; ++s) xs_z(x * 3 + s, z) = xzs.at(x, z, s);
  const double cmi = *ConditionalMutualInformation(xzs);
  const double sz = *MutualInformation(joint.PairMarginal(Axis::kS, Axis::kZ));
  EXPECT_NEAR(cmi, *MutualInformation(xs_z) - sz, 1e-12);
}

TEST(PluginMutualInformationTest, IdenticalLabels) {
  std::vector<int> a(10000);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = i % 2;
  EXPECT_NEAR(*PluginMutualInformation(a, a, 2, 2), std::log(2.0), 1e-12);
}

TEST(PluginMutualInformationTest, ShuffledLabelsNearZero) {
  std::mt19937_64 rng(7);
  std::vector<int> a(10000), b(10000);
  for (int& v : a) v = rng() % 2;
  for (int& v : b) v = rng() % 2;
  const double mi = *PluginMutualInformation(a, b, 2, 2);
  EXPECT_GE(mi, 0.0);
  EXPECT_LE(mi, 0.01);
}

TEST(PluginMutualInformationTest, ConvergesToExact) {
  Matrix joint(3, 2);
  joint << 0.3, 0.05, 0.1, 0.2, 0.05, 0.3;
  std::mt19937_64 rng(8);
  std::discrete_distribution<int> cell(joint.data(), joint.data() + 6);
  std::vector<int> a, b;
  for (int i = 0; i < 100000; ++i) {
    const int c = cell(rng);  // column-major cell index
    a.push_back(c % 3);
    b.push_back(c / 3);
  }
  EXPECT_NEAR(*PluginMutualInformation(a, b, 3, 2), *MutualInformation(joint),
              0.01);
}

TEST(PluginMutualInformationTest, RejectsBadInput) {
  const std::vector<int> a = {0, 1, 2}, b = {0, 1};
  EXPECT_FALSE(PluginMutualInformation(a, b, 3, 2).ok());
  const std::vector<int> c = {0, 1, 2};
  EXPECT_FALSE(PluginMutualInformation(a, c, 2, 3).ok());
}

MineConfig QuickMine() {
  MineConfig cfg;
  cfg.iterations = 3000;
  cfg.batch_size = 256;
  return cfg;
}

void Gaussians(double rho, int n, std::uint64_t seed, Matrix* a, Matrix* b) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  *a = Matrix(n, 1);
  *b = Matrix(n, 1);
  for (int i = 0; i < n; ++i) {
    const double x = g(rng), e = g(rng);
    (*a)(i, 0) = x;
    (*b)(i, 0) = rho * x + std::sqrt(1 - rho * rho) * e;
  }
}

TEST(MineTest, IndependentGaussiansNearZero) {
  Matrix a, b;
  Gaussians(0.0, 10000, 1, &a, &b);
  auto r = MineEstimate(a, b, QuickMine(), 1);
  ASSERT_TRUE(r.ok());
  EXPECT_GE(r->estimate, -0.05);
  EXPECT_LE(r->estimate, 0.05);
  EXPECT_EQ(static_cast<int>(r->trace.size()), QuickMine().iterations);
}

TEST(MineTest, CorrelatedGaussians) {
  Matrix a, b;
  Gaussians(0.9, 10000, 2, &a, &b);
  auto r = MineEstimate(a, b, QuickMine(), 2);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->estimate, -0.5 * std::log(1 - 0.81), 0.08);
}

TEST(MineTest, EmbeddedDiscretePairs) {
  Matrix joint(2, 2);
  joint << 0.4, 0.1, 0.1, 0.4;
  std::mt19937_64 rng(3);
  std::discrete_distribution<int> cell(joint.data(), joint.data() + 4);
  const int n = 10000;
  Matrix a(n, 1), b(n, 1);
  for (int i = 0; i < n; ++i) {
    const int c = cell(rng);
    a(i, 0) = c % 2;
    b(i, 0) = c / 2;
  }
  auto r = MineEstimate(a, b, QuickMine(), 3);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->estimate, *MutualInformation(joint), 0.05);
}

TEST(MineTest, SameSeedIsDeterministic) {
  Matrix a, b;
  Gaussians(0.5, 2000, 4, &a, &b);
  MineConfig cfg = QuickMine();
  cfg.iterations = 200;
  EXPECT_EQ(MineEstimate(a, b, cfg, 9)->estimate,
            MineEstimate(a, b, cfg, 9)->estimate);
}

TEST(MineTest, RejectsTooFewRows) {
  Matrix a, b;
  Gaussians(0.5, 500, 4, &a, &b);
  EXPECT_EQ(MineEstimate(a, b, QuickMine(), 1).status().code(),
            absl::StatusCode::kInvalidArgument);
}

}  // namespace
}  // namespace ldpfair
