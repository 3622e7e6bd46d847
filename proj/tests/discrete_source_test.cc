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

#include "ldpfair/discrete_source.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"

namespace ldpfair {
namespace {

Array3 Filled(int a, int b, int c, double v) {
  Array3 out(a, b, c);
  for (double& x : out.values) x = v;
  return out;
}

Channel Bsc(double flip) {
  return *Channel::FromRowMajor(2, 2, {1 - flip, flip, flip, 1 - flip});
}

TEST(JointSourceTest, UniformCubeHasUniformMarginals) {
  auto src = JointSourceUSX::Create(Filled(2, 2, 2, 0.125));
  ASSERT_TRUE(src.ok());
  for (const Vector& m : {src->MarginalU(), src->MarginalS(), src->MarginalX()}) {
    EXPECT_NEAR(m(0), 0.5, 1e-15);
    EXPECT_NEAR(m(1), 0.5, 1e-15);
  }
}

TEST(JointSourceTest, RejectsNegativeEntry) {
  Array3 a = Filled(2, 2, 2, 0.125);
  a.at(0, 0, 0) = -0.1;
  a.at(1, 1, 1) = 0.35;
  EXPECT_EQ(JointSourceUSX::Create(a).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(JointSourceTest, RejectsUnnormalized) {
  EXPECT_FALSE(JointSourceUSX::Create(Filled(2, 2, 2, 0.2)).ok());
}

TEST(JointSourceTest, AdultMarginalToy) {
  const double pu1 = 0.2362;
  Array3 a(2, 2, 4);
  for (int u = 0; u < 2; ++u)
    for (int s = 0; s < 2; ++s)
      for (int x = 0; x < 4; ++x) a.at(u, s, x) = (u ? pu1 : 1 - pu1) / 8.0;
  auto src = JointSourceUSX::Create(a);
  ASSERT_TRUE(src.ok());
  EXPECT_NEAR(src->MarginalU()(1), 0.2362, 1e-15);
}

TEST(ChannelTest, IdentityComposeIdentity) {
  auto c = Compose(Channel::Identity(3), Channel::Identity(3));
  ASSERT_TRUE(c.ok());
  EXPECT_TRUE(c->matrix().isApprox(Channel::Identity(3).matrix()));
}

TEST(ChannelTest, ConstantOutputAbsorbs) {
  Rng rng(3);
  const Channel a = RandomChannel(4, 3, rng);
  auto c = Compose(a, Channel::Constant(3, 5, 2));
  ASSERT_TRUE(c.ok());
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 5; ++j) EXPECT_NEAR((*c)(i, j), j == 2 ? 1.0 : 0.0, 1e-15);
  }
}

TEST(ChannelTest, SwapThenBscIsComplementaryBsc) {
  const Channel swap = *Channel::FromRowMajor(2, 2, {0, 1, 1, 0});
  auto c = Compose(swap, Bsc(0.25));
  ASSERT_TRUE(c.ok());
  EXPECT_TRUE(c->matrix().isApprox(Bsc(0.75).matrix(), 1e-15));
}

TEST(ChannelTest, ShapeMismatchIsRejected) {
  EXPECT_FALSE(Compose(Channel::Identity(2), Channel::Identity(3)).ok());
}

TEST(ChannelTest, RejectsNonStochasticRows) {
  EXPECT_FALSE(Channel::FromRowMajor(2, 2, {0.5, 0.6, 0.5, 0.5}).ok());
  EXPECT_FALSE(Channel::FromRowMajor(2, 2, {1.2, -0.2, 0.5, 0.5}).ok());
  EXPECT_FALSE(Channel::FromRowMajor(2, 2, {1, 0, 0}).ok());
}

TEST(ChannelTest, CompositionIsStochasticAndAssociative) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Channel a = RandomChannel(3, 4, rng, 0.3);
    const Channel b = RandomChannel(4, 2, rng, 1.0);
    const Channel c = RandomChannel(2, 5, rng, 3.0);
    const Channel left = *Compose(*Compose(a, b), c);
    const Channel right = *Compose(a, *Compose(b, c));
    EXPECT_TRUE(left.matrix().isApprox(right.matrix(), 1e-12));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(left.matrix().row(i).sum(), 1.0, 1e-12);
  }
}

TEST(InducedJointTest, IdentityEncoderCopiesX) {
  const JointSourceUSX src = RandomSource(2, 3, 4, 5);
  auto joint = InducedJoint(src, Channel::Identity(4));
  ASSERT_TRUE(joint.ok());
  const Matrix xz = joint->PairMarginal(Axis::kX, Axis::kZ);
  const Vector px = src.MarginalX();
  for (int x = 0; x < 4; ++x) {
    EXPECT_NEAR(xz.col(x).sum(), px(x), 1e-15);
    EXPECT_NEAR(xz(x, x), px(x), 1e-15);
  }
}

TEST(InducedJointTest, ConstantEncoderIsIndependent) {
  const JointSourceUSX src = RandomSource(2, 2, 3, 6);
  auto joint = InducedJoint(src, Channel::Constant(3, 2, 1));
  ASSERT_TRUE(joint.ok());
  const Matrix uz = joint->PairMarginal(Axis::kU, Axis::kZ);
  const Vector pu = src.MarginalU();
  for (int u = 0; u < 2; ++u) {
    EXPECT_NEAR(uz(u, 0), 0.0, 1e-15);
    EXPECT_NEAR(uz(u, 1), pu(u), 1e-15);
  }
}

TEST(InducedJointTest, BscMarginalByEnumeration) {
  Array3 a(2, 2, 2);
  const double cells[8] = {0.05, 0.10, 0.15, 0.20, 0.08, 0.12, 0.13, 0.17};
  std::copy(cells, cells + 8, a.values.begin());
  const JointSourceUSX src = *JointSourceUSX::Create(a);
  auto joint = InducedJoint(src, Bsc(0.25));
  ASSERT_TRUE(joint.ok());
  // Sum over the 16 (u, s, x, z) cells by hand.
  double pz[2] = {0, 0};
  for (int u = 0; u < 2; ++u)
    for (int s = 0; s < 2; ++s)
      for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
          pz[z] += a.at(u, s, x) * (x == z ? 0.75 : 0.25);
  const Matrix xz = joint->PairMarginal(Axis::kX, Axis::kZ);
  EXPECT_NEAR(xz.col(0).sum(), pz[0], 1e-15);
  EXPECT_NEAR(xz.col(1).sum(), pz[1], 1e-15);
  EXPECT_NEAR((*joint)(1, 0, 1, 0), a.at(1, 0, 1) * 0.25, 1e-15);
}

TEST(InducedJointTest, MarginalsAreConsistent) {
  Rng rng(2);
  const JointSourceUSX src = RandomSource(3, 2, 4, 8);
  const JointFull joint = *InducedJoint(src, RandomChannel(4, 3, rng));
  const Array3 back = joint.SourceMarginal();
  for (std::size_t i = 0; i < back.values.size(); ++i) {
    EXPECT_NEAR(back.values[i], src.probs().values[i], 1e-15);
  }
  double total = 0.0;
  for (double v : joint.values()) total += v;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(SampleTest, SameSeedSameSequence) {
  const JointSourceUSX src = RandomSource(2, 2, 3, 1);
  EXPECT_EQ(*src.Sample(500, 42), *src.Sample(500, 42));
  EXPECT_NE(*src.Sample(500, 42), *src.Sample(500, 43));
}

TEST(SampleTest, CellFrequenciesConcentrate) {
  const JointSourceUSX src = *JointSourceUSX::Create(Filled(2, 2, 2, 0.125));
  const int n = 100000;
  auto samples = src.Sample(n, 9);
  ASSERT_TRUE(samples.ok());
  std::vector<int> counts(8, 0);
  for (const UsxSample& s : *samples) ++counts[(s.u * 2 + s.s) * 2 + s.x];
  const double sigma = std::sqrt(n * 0.125 * 0.875);
  for (int c : counts) EXPECT_LT(std::abs(c - n * 0.125), 4 * sigma);
}

TEST(TextFormatTest, RoundTrip) {
  Rng rng(4);
  const JointSourceUSX src = RandomSource(2, 3, 4, 12);
  auto back = ParseSource(FormatSource(src));
  ASSERT_TRUE(back.ok());
  for (std::size_t i = 0; i < src.probs().values.size(); ++i) {
    EXPECT_DOUBLE_EQ(back->probs().values[i], src.probs().values[i]);
  }
  const Channel ch = RandomChannel(3, 5, rng);
  auto ch2 = ParseChannel(FormatChannel(ch));
  ASSERT_TRUE(ch2.ok());
  EXPECT_TRUE(ch2->matrix().isApprox(ch.matrix(), 1e-15));
  EXPECT_FALSE(ParseChannel("2 2\n0.5 0.5\n").ok());
}

}  // namespace
}  // namespace ldpfair
