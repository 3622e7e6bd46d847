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

#include "ldpfair/ib_solver.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "ldpfair/info_measures.h"

namespace ldpfair {
namespace {

double H(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0) h -= v * std::log(v);
  }
  return h;
}

// Information quantities by direct summation over (u, s, x, zhat, z).
struct Direct {
  double gamma, omega, nu, ixz;
};

Direct DirectQuantities(const JointSourceUSX& src, const Channel& enc,
                        const Channel& mech) {
  const int cu = src.card_u(), cs = src.card_s(), cx = src.card_x();
  const int cz = mech.out_card();
  std::vector<double> usxz(cu * cs * cx * cz, 0.0);
  for (int u = 0; u < cu; ++u)
    for (int s = 0; s < cs; ++s)
      for (int x = 0; x < cx; ++x)
        for (int m = 0; m < enc.out_card(); ++m)
          for (int z = 0; z < cz; ++z)
            usxz[((u * cs + s) * cx + x) * cz + z] +=
                src(u, s, x) * enc(x, m) * mech(m, z);
  auto marg = [&](bool ku, bool ks, bool kx, bool kz) {
    std::vector<double> out((ku ? cu : 1) * (ks ? cs : 1) * (kx ? cx : 1) *
                            (kz ? cz : 1), 0.0);
    for (int u = 0; u < cu; ++u)
      for (int s = 0; s < cs; ++s)
        for (int x = 0; x < cx; ++x)
          for (int z = 0; z < cz; ++z) {
            int i = 0;
            if (ku) i = i * cu + u;
            if (ks) i = i * cs + s;
            if (kx) i = i * cx + x;
            if (kz) i = i * cz + z;
            out[i] += usxz[((u * cs + s) * cx + x) * cz + z];
          }
    return out;
  };
  const double hz = H(marg(0, 0, 0, 1));
  Direct d;
  d.gamma = H(marg(1, 0, 0, 0)) + hz - H(marg(1, 0, 0, 1));
  d.omega = H(marg(0, 1, 0, 0)) + hz - H(marg(0, 1, 0, 1));
  d.ixz = H(marg(0, 0, 1, 0)) + hz - H(marg(0, 0, 1, 1));
  d.nu = H(marg(0, 1, 1, 0)) + H(marg(0, 1, 0, 1)) - H(marg(0, 1, 1, 1)) -
         H(marg(0, 1, 0, 0));
  return d;
}

Channel Deterministic(const std::vector<int>& map, int out) {
  Matrix m = Matrix::Zero(map.size(), out);
  for (std::size_t i = 0; i < map.size(); ++i) m(i, map[i]) = 1.0;
  return *Channel::Create(m);
}

JointSourceUSX CopySource() {
  Array3 a(2, 2, 2);
  a.at(0, 0, 0) = 0.5;
  a.at(1, 1, 1) = 0.5;
  return *JointSourceUSX::Create(a);
}

SolverConfig Fast(double beta) {
  SolverConfig c;
  c.beta = beta;
  c.restarts = 4;
  c.iterations = 800;
  return c;
}

TEST(ObjectiveTest, GradientMatchesCentralDifferences) {
  const JointSourceUSX src = RandomSource(2, 3, 3, 4);
  const Channel mech = *RandomizedResponse::Create(1.0, 3, 1)->ExactChannel();
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Matrix logits(3, 3);
  for (Eigen::Index i = 0; i < logits.size(); ++i) logits.data()[i] = g(rng);
  auto og = EvaluateObjective(src, mech, logits, 2.0);
  ASSERT_TRUE(og.ok());
  Matrix numeric(3, 3);
  for (Eigen::Index i = 0; i < logits.size(); ++i) {
    Matrix up = logits, down = logits;
    up.data()[i] += 1e-6;
    down.data()[i] -= 1e-6;
    numeric.data()[i] = (EvaluateObjective(src, mech, up, 2.0)->value -
                         EvaluateObjective(src, mech, down, 2.0)->value) /
                        2e-6;
  }
  EXPECT_LT((og->grad - numeric).norm() / numeric.norm(), 1e-5);
}

TEST(ObjectiveTest, ValueMatchesDirectSummation) {
  const JointSourceUSX src = RandomSource(2, 2, 4, 5);
  const Channel mech = *RandomizedResponse::Create(0.8, 4, 1)->ExactChannel();
  Matrix logits = Matrix::Random(4, 4);
  Matrix enc = logits.array().exp();
  for (int i = 0; i < 4; ++i) enc.row(i) /= enc.row(i).sum();
  const Direct d = DirectQuantities(src, *Channel::Create(enc), mech);
  EXPECT_NEAR(EvaluateObjective(src, mech, logits, 3.0)->value,
              d.nu + 3.0 * d.gamma, 1e-12);
}

TEST(EvaluateEncoderTest, MatchesDirectSummation) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const JointSourceUSX src = RandomSource(2 + t % 2, 2, 3, 100 + t);
    const Channel enc = RandomChannel(3, 3, rng, 0.5);
    const Channel mech =
        *RandomizedResponse::Create(0.5 + t * 0.1, 3, 1)->ExactChannel();
    auto pt = EvaluateEncoder(src, enc, mech, 1.5);
    ASSERT_TRUE(pt.ok());
    const Direct d = DirectQuantities(src, enc, mech);
    EXPECT_NEAR(pt->Gamma, d.gamma, 1e-12);
    EXPECT_NEAR(pt->Omega, d.omega, 1e-12);
    EXPECT_NEAR(pt->nu, d.nu, 1e-12);
    EXPECT_NEAR(pt->ixz, d.ixz, 1e-12);
  }
}

TEST(SolveGTest, ZeroBetaKeepsChainRule) {
  const JointSourceUSX src = RandomSource(2, 2, 3, 7);
  auto pt = SolveG(src, *DefaultMechanism(src, 1.0), Fast(0.0));
  ASSERT_TRUE(pt.ok());
  EXPECT_NEAR(pt->Omega, pt->ixz - pt->nu, 1e-12);
  EXPECT_NEAR(pt->objective, pt->nu, 1e-12);
}

TEST(SolveGTest, ZeroBudgetGivesNothing) {
  for (int seed = 0; seed < 10; ++seed) {
    const JointSourceUSX src = RandomSource(2, 2, 2 + seed % 3, seed);
    auto pt = SolveG(src, *DefaultMechanism(src, 0.0), Fast(1.0));
    ASSERT_TRUE(pt.ok());
    EXPECT_LE(pt->Gamma, 1e-12);
    EXPECT_LE(pt->Omega, 1e-12);
    EXPECT_LE(pt->ixz, 1e-12);
  }
}

TEST(SolveGTest, ReachesEnumeratedOptimum) {
  const JointSourceUSX src = RandomSource(2, 2, 4, 0);
  const RandomizedResponse rr = *DefaultMechanism(src, 0.7);
  const Channel mech = *rr.ExactChannel();
  const double beta = 10.0;
  // The objective is convex in the encoder, so its maximum sits at a
  // deterministic encoder; random channels only confirm the bound.
  double best = -1.0;
  std::vector<int> map(4, 0);
  for (int code = 0; code < 256; ++code) {
    for (int i = 0, c = code; i < 4; ++i, c /= 4) map[i] = c % 4;
    best = std::max(best, EvaluateEncoder(src, Deterministic(map, 4), mech,
                                          beta)->objective);
  }
  std::mt19937_64 rng(3);
  double random_best = -1.0;
  for (int i = 0; i < 20000; ++i) {
    random_best = std::max(
        random_best, EvaluateEncoder(src, RandomChannel(4, 4, rng, 0.2), mech,
                                     beta)->objective);
  }
  EXPECT_LE(random_best, best + 1e-12);
  auto pt = SolveG(src, rr, Fast(beta));
  ASSERT_TRUE(pt.ok());
  EXPECT_GE(pt->objective, best - 1e-3);
  EXPECT_LE(pt->objective, best + 1e-12);
}

TEST(SolveGTest, RejectsBadConfig) {
  const JointSourceUSX src = RandomSource(2, 2, 3, 1);
  SolverConfig c = Fast(1.0);
  c.restarts = 0;
  EXPECT_EQ(SolveG(src, *DefaultMechanism(src, 1.0), c).status().code(),
            absl::StatusCode::kInvalidArgument);
  c = Fast(-1.0);
  EXPECT_FALSE(SolveG(src, *DefaultMechanism(src, 1.0), c).ok());
}

TEST(SolveGTest, DeterministicForSeed) {
  const JointSourceUSX src = RandomSource(2, 2, 3, 2);
  const RandomizedResponse rr = *DefaultMechanism(src, 1.0);
  EXPECT_EQ(SolveG(src, rr, Fast(1.0))->objective,
            SolveG(src, rr, Fast(1.0))->objective);
}

TEST(BruteforceTest, IndependentSensitiveLeaksNothing) {
  Array3 a(2, 2, 3);
  const double pu_x[2][3] = {{0.2, 0.1, 0.1}, {0.05, 0.15, 0.4}};
  for (int u = 0; u < 2; ++u)
    for (int s = 0; s < 2; ++s)
      for (int x = 0; x < 3; ++x) a.at(u, s, x) = pu_x[u][x] * (s ? 0.3 : 0.7);
  const JointSourceUSX src = *JointSourceUSX::Create(a);
  for (double gamma : {0.0, 0.05, 0.1}) {
    auto r = SolveGBruteforce(src, gamma, 2000, 1);
    ASSERT_TRUE(r.ok());
    EXPECT_NEAR(r->min_leakage, 0.0, 1e-12);
  }
}

TEST(BruteforceTest, IdenticalVariablesLeakUtility) {
  auto r = SolveGBruteforce(CopySource(), 0.3, 2000, 1);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->min_leakage, 0.3, 1e-6);
  EXPECT_GE(r->utility, 0.3 - kOracleFeasibilitySlack);
}

TEST(BruteforceTest, FrozenRegressionValue) {
  const JointSourceUSX src = RandomSource(2, 2, 3, 0);
  auto r = SolveGBruteforce(src, 0.04, 100000, 0);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_NEAR(r->min_leakage, 0.0047299862774749712, 1e-9);
  EXPECT_NEAR(r->max_utility, 0.0648809, 1e-7);
  EXPECT_GE(r->utility, 0.04 - kOracleFeasibilitySlack);
}

TEST(BruteforceTest, ParallelMatchesSerial) {
  const JointSourceUSX src = RandomSource(2, 2, 3, 5);
  auto a = SolveGBruteforce(src, 0.01, 20000, 3, 1);
  auto b = SolveGBruteforce(src, 0.01, 20000, 3, 4);
  ASSERT_TRUE(a.ok()) << a.status();
  ASSERT_TRUE(b.ok()) << b.status();
  EXPECT_EQ(a->min_leakage, b->min_leakage);
}

TEST(BruteforceTest, Preconditions) {
  const JointSourceUSX src = RandomSource(2, 2, 3, 0);
  EXPECT_EQ(SolveGBruteforce(src, 10.0, 100, 0).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_EQ(SolveGBruteforce(RandomSource(2, 2, 5, 0), 0.1, 100, 0)
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(SolveGBruteforce(src, -0.1, 100, 0).ok());
}

TEST(FrontierTest, SingletonMatchesSolve) {
  const JointSourceUSX src = RandomSource(2, 2, 3, 3);
  const RandomizedResponse rr = *DefaultMechanism(src, 1.0);
  const auto pts = TraceFrontier(src, rr, {2.0}, Fast(0.0));
  ASSERT_EQ(pts.size(), 1u);
  ASSERT_TRUE(pts[0].ok());
  EXPECT_EQ(pts[0]->objective, SolveG(src, rr, Fast(2.0))->objective);
}

TEST(FrontierTest, UtilityGrowsWithBeta) {
  const JointSourceUSX src = RandomSource(2, 2, 4, 6);
  const RandomizedResponse rr = *DefaultMechanism(src, 1.0);
  const std::vector<double> betas = {1e-3, 1e-2, 1e-1, 1, 10, 100, 1000};
  const auto pts = TraceFrontier(src, rr, betas, Fast(0.0), 2);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    ASSERT_TRUE(pts[i].ok());
    EXPECT_GE(pts[i]->Gamma, pts[i - 1]->Gamma - 0.01) << "beta " << betas[i];
  }
}

TEST(Theorem1Test, ZeroBudgetPointHolds) {
  const JointSourceUSX src = RandomSource(2, 2, 3, 8);
  auto pt = SolveG(src, *DefaultMechanism(src, 0.0), Fast(1.0));
  ASSERT_TRUE(pt.ok());
  const Theorem1Report r = CheckTheorem1(*pt, 0.0);
  EXPECT_TRUE(r.pass()) << r.Describe();
}

TEST(Theorem1Test, SeededConfigurationsPass) {
  const double eps[] = {0.5, 1.0, 2.0, 4.0};
  const double betas[] = {0.0, 0.1, 1.0, 10.0, 100.0};
  for (int i = 0; i < 20; ++i) {
    const JointSourceUSX src = RandomSource(2, 2, 2 + i % 3, 500 + i);
    auto pt = SolveG(src, *DefaultMechanism(src, eps[i % 4]), Fast(betas[i % 5]));
    ASSERT_TRUE(pt.ok());
    const Theorem1Report r = CheckTheorem1(*pt, pt->Gamma);
    EXPECT_TRUE(r.pass()) << i << ": " << r.Describe();
  }
}

TEST(Theorem1Test, DetectsViolations) {
  FrontierPoint p;
  p.epsilon = 1.0;
  p.Gamma = 0.5;
  p.Omega = 0.6;
  p.nu = 0.5;
  p.ixz = 1.1;
  const Theorem1Report r = CheckTheorem1(p, 0.6);
  EXPECT_FALSE(r.utility_bounds);
  EXPECT_FALSE(r.leakage_bound);
  EXPECT_FALSE(r.lemma2_chain);
}

TEST(Corollary2Test, ZeroUtilityHasNoGap) {
  const JointSourceUSX src = RandomSource(2, 2, 3, 0);
  auto r = CheckCorollary2(src, 0.0, 2000, Fast(1.0), {0.1, 1, 10});
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->gap, 0.0, 1e-12);
  EXPECT_NEAR(r->solver_leakage, 0.0, 1e-12);
}

// Randomized response at budget epsilon keeps I(X;Z) strictly below epsilon,
// so no encoder reaches I(U;Z) >= gamma at epsilon = gamma (1 + 1e-3).
TEST(Corollary2Test, PositiveUtilityTargetIsUnreachable) {
  auto copy = CheckCorollary2(CopySource(), 0.3, 2000, Fast(1.0),
                              {1e-3, 1, 1e3});
  EXPECT_EQ(copy.status().code(), absl::StatusCode::kFailedPrecondition);
  auto seeded = CheckCorollary2(RandomSource(2, 2, 3, 0), 0.1, 2000, Fast(1.0),
                                {1e-3, 1, 1e3});
  EXPECT_EQ(seeded.status().code(), absl::StatusCode::kFailedPrecondition);
}

}  // namespace
}  // namespace ldpfair
