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

#include "ldpfair/ldp_mechanisms.h"

#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"

namespace ldpfair {

absl::StatusOr<LaplaceMechanism> LaplaceMechanism::Create(double epsilon,
                                                          double t, int d) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("laplace: epsilon must be positive, got %g", epsilon));
  }
  if (!(t > 0.0) || d < 1) {
    return absl::InvalidArgumentError("laplace: need t > 0 and d >= 1");
  }
  return LaplaceMechanism(epsilon, t, d);
}

double LaplaceMechanism::SampleNoise(Rng& rng) const {
  // Inverse CDF on u in (-1/2, 1/2).
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  double u = unif(rng);
  while (u == -0.5) u = unif(rng);
  return -scale() * std::copysign(1.0, u) * std::log1p(-2.0 * std::abs(u));
}

absl::StatusOr<std::vector<double>> LaplaceMechanism::Randomize(
    std::span<const double> zhat, Rng& rng) const {
  if (static_cast<int>(zhat.size()) != d_) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "laplace: expected %d coordinates, got %d", d_, zhat.size()));
  }
  std::vector<double> z(zhat.begin(), zhat.end());
  for (int i = 0; i < d_; ++i) {
    if (std::abs(zhat[i]) > t_ + kTruncationSlack) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "laplace: coordinate %d = %g outside [-%g, %g]; truncate first", i,
          zhat[i], t_, t_));
    }
  }
  for (double& v : z) v += SampleNoise(rng);
  return z;
}

double LaplaceMechanism::LogDensityRatio(std::span<const double> z,
                                         std::span<const double> a,
                                         std::span<const double> b) const {
  double r = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    r += (std::abs(z[i] - b[i]) - std::abs(z[i] - a[i])) / scale();
  }
  return r;
}

double LaplaceMechanism::WorstCaseLogRatio(std::span<const double> a,
                                           std::span<const double> b) const {
  double l1 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) l1 += std::abs(a[i] - b[i]);
  return l1 / scale();
}

RandomizedResponse::RandomizedResponse(double eps, int k, int d)
    : epsilon_(eps), k_(k), d_(d) {
  const double e = std::exp(eps / d);
  keep_ = e / (e + k - 1);
  other_ = 1.0 / (e + k - 1);
}

absl::StatusOr<RandomizedResponse> RandomizedResponse::Create(double epsilon,
                                                              int k, int d) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "randomized response: epsilon must be >= 0, got %g", epsilon));
  }
  if (k < 2 || d < 1) {
    return absl::InvalidArgumentError(
        "randomized response: need k >= 2 and d >= 1");
  }
  return RandomizedResponse(epsilon, k, d);
}

int RandomizedResponse::RandomizeSymbol(int symbol, double keep_draw,
                                        double replace_draw) const {
  if (keep_draw < keep_) return symbol;
  int r = static_cast<int>(replace_draw * (k_ - 1));
  if (r >= k_ - 1) r = k_ - 2;
  return r >= symbol ? r + 1 : r;
}

absl::StatusOr<std::vector<int>> RandomizedResponse::Randomize(
    std::span<const int> zhat, Rng& rng) const {
  if (static_cast<int>(zhat.size()) != d_) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "randomized response: expected %d symbols, got %d", d_, zhat.size()));
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<int> out(d_);
  for (int i = 0; i < d_; ++i) {
    if (zhat[i] < 0 || zhat[i] >= k_) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "randomized response: symbol %d out of range [0, %d)", zhat[i], k_));
    }
    const double keep_draw = unif(rng);
    const double replace_draw = unif(rng);
    out[i] = RandomizeSymbol(zhat[i], keep_draw, replace_draw);
  }
  return out;
}

absl::StatusOr<Channel> RandomizedResponse::ExactChannel(int cap) const {
  double size = std::pow(static_cast<double>(k_), d_);
  if (size > cap) {
    return absl::ResourceExhaustedError(absl::StrFormat(
        "randomized response: k^d = %g exceeds channel cap %d", size, cap));
  }
  const int n = static_cast<int>(size);
  Matrix m(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double p = 1.0;
      int ra = a, rb = b;
      for (int i = 0; i < d_; ++i) {
        p *= (ra % k_ == rb % k_) ? keep_ : other_;
        ra /= k_;
        rb /= k_;
      }
      m(a, b) = p;
    }
  }
  return Channel::Create(std::move(m));
}

LdpVerdict VerifyLdp(const Channel& ch, double epsilon) {
  const double inf = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (int z = 0; z < ch.out_card() && worst < inf; ++z) {
    for (int x = 0; x < ch.in_card() && worst < inf; ++x) {
      const double p = ch(x, z);
      for (int x2 = 0; x2 < ch.in_card(); ++x2) {
        if (x2 == x) continue;
        const double q = ch(x2, z);
        if (p == 0.0) continue;  // 0/0 and 0/q are satisfied
        if (q == 0.0) {
          worst = inf;
          break;
        }
        worst = std::max(worst, std::log(p / q));
      }
    }
  }
  return {worst, worst <= epsilon + kLdpSlack};
}

absl::StatusOr<Lemma1Result> CheckLemma1(const Channel& enc,
                                         const Channel& mech, double epsilon) {
  Lemma1Result r;
  r.mechanism = VerifyLdp(mech, epsilon);
  if (!r.mechanism.pass) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "lemma1: mechanism is not %g-LDP (max log ratio %g)", epsilon,
        r.mechanism.max_log_ratio));
  }
  auto composed = Compose(enc, mech);
  if (!composed.ok()) return composed.status();
  r.composed = VerifyLdp(*composed, epsilon);
  return r;
}

}  // namespace ldpfair
