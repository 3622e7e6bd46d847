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

// Entropy and mutual information in nats, exact on finite joints, plug-in on
// paired discrete samples, and the MINE neural lower bound for real-valued
// samples.

#ifndef LDPFAIR_INFO_MEASURES_H_
#define LDPFAIR_INFO_MEASURES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpfair/discrete_source.h"

namespace ldpfair {

// Values in (-kInfoClampTolerance, 0) are reported as exactly 0.
inline constexpr double kInfoClampTolerance = 1e-9;

absl::StatusOr<double> Entropy(std::span<const double> dist);
absl::StatusOr<double> Entropy(const Vector& dist);

// I(A; B) for a joint with rows indexed by A and columns by B.
absl::StatusOr<double> MutualInformation(const Matrix& joint);

// I(X; Z | S) for a joint indexed (x, z, s).
absl::StatusOr<double> ConditionalMutualInformation(const Array3& joint_xzs);

// Plug-in MI of the empirical joint of paired labels, with `smoothing`
// pseudo-counts added to every cell.
absl::StatusOr<double> PluginMutualInformation(std::span<const int> a,
                                               std::span<const int> b,
                                               int card_a, int card_b,
                                               double smoothing = 0.0);

struct MineConfig {
  std::vector<int> hidden = {100, 100};
  int iterations = 50000;
  int batch_size = 1024;
  double learning_rate = 1e-3;
  double ema_rate = 0.01;
  int averaging_window = 100;
};

struct MineResult {
  // Mean Donsker-Varadhan bound over the final averaging window.
  double estimate = 0.0;
  // Per-iteration minibatch DV bound.
  std::vector<double> trace;
};

// MINE with a ReLU6 statistics network on concat(a, b). Marginal samples are
// formed by shuffling b within each minibatch. Rows of `a` and `b` are paired;
// at least 1000 rows are required.
absl::StatusOr<MineResult> MineEstimate(const Matrix& a, const Matrix& b,
                                        const MineConfig& cfg,
                                        std::uint64_t seed);

}  // namespace ldpfair

#endif  // LDPFAIR_INFO_MEASURES_H_
