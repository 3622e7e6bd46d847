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

// The two epsilon-LDP randomizers applied to intermediate representations:
// a Laplace mechanism for truncated real vectors and per-coordinate
// randomized response for symbol vectors, plus exhaustive LDP verification of
// finite channels.

#ifndef LDPFAIR_LDP_MECHANISMS_H_
#define LDPFAIR_LDP_MECHANISMS_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpfair/discrete_source.h"

namespace ldpfair {

// Coordinates may exceed the truncation box by at most this much.
inline constexpr double kTruncationSlack = 1e-9;
// verify_ldp acceptance slack on the log ratio.
inline constexpr double kLdpSlack = 1e-9;
inline constexpr int kDefaultChannelCap = 4096;

class LaplaceMechanism {
 public:
  // epsilon > 0, t > 0, d >= 1.
  static absl::StatusOr<LaplaceMechanism> Create(double epsilon, double t,
                                                 int d);

  double epsilon() const { return epsilon_; }
  double t() const { return t_; }
  int d() const { return d_; }
  // Noise scale 2 t d / epsilon.
  double scale() const { return 2.0 * t_ * d_ / epsilon_; }

  // z = zhat + Laplace(0, scale) noise per coordinate. Every coordinate must
  // lie in [-t, t].
  absl::StatusOr<std::vector<double>> Randomize(std::span<const double> zhat,
                                                Rng& rng) const;
  double SampleNoise(Rng& rng) const;

  // log p(z | a) - log p(z | b), the exact output log-density ratio.
  double LogDensityRatio(std::span<const double> z, std::span<const double> a,
                         std::span<const double> b) const;
  // Worst case over all outputs z: epsilon * |a - b|_1 / (2 t d).
  double WorstCaseLogRatio(std::span<const double> a,
                           std::span<const double> b) const;

 private:
  LaplaceMechanism(double eps, double t, int d) : epsilon_(eps), t_(t), d_(d) {}
  double epsilon_, t_;
  int d_;
};

class RandomizedResponse {
 public:
  // epsilon >= 0, k >= 2, d >= 1.
  static absl::StatusOr<RandomizedResponse> Create(double epsilon, int k,
                                                   int d);

  double epsilon() const { return epsilon_; }
  int k() const { return k_; }
  int d() const { return d_; }
  // e^{eps/d} / (e^{eps/d} + k - 1).
  double keep_probability() const { return keep_; }
  // 1 / (e^{eps/d} + k - 1), for each of the k - 1 other symbols.
  double other_probability() const { return other_; }

  // Each coordinate is kept with keep_probability(), otherwise replaced by a
  // uniform draw over the other k - 1 symbols.
  absl::StatusOr<std::vector<int>> Randomize(std::span<const int> zhat,
                                             Rng& rng) const;
  // Deterministic core of Randomize: `keep_draw` and `replace_draw` are
  // uniforms on [0, 1).
  int RandomizeSymbol(int symbol, double keep_draw, double replace_draw) const;

  // Exact k^d x k^d channel; symbol vectors are flattened with the first
  // coordinate most significant.
  absl::StatusOr<Channel> ExactChannel(int cap = kDefaultChannelCap) const;

 private:
  RandomizedResponse(double eps, int k, int d);
  double epsilon_;
  int k_, d_;
  double keep_, other_;
};

struct LdpVerdict {
  // max over z and x != x' of log p(z|x) / p(z|x'); +inf when some output is
  // possible under one input and impossible under another.
  double max_log_ratio = 0.0;
  bool pass = false;
};

// Exhaustive check of the LDP inequality at `epsilon`.
LdpVerdict VerifyLdp(const Channel& ch, double epsilon);

struct Lemma1Result {
  LdpVerdict mechanism;  // precondition: the mechanism alone
  LdpVerdict composed;   // conclusion: encoder followed by mechanism
};

// Post-processing closure. Returns FailedPrecondition if `mech` itself is not
// epsilon-LDP; otherwise the verdicts (composed.pass is the conclusion).
absl::StatusOr<Lemma1Result> CheckLemma1(const Channel& enc,
                                         const Channel& mech, double epsilon);

}  // namespace ldpfair

#endif  // LDPFAIR_LDP_MECHANISMS_H_
