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

// Finite joint distributions p(u, s, x) and the channels that act on X.
//
// All probabilities are kept in linear space. Alphabets are small (<= 32 per
// axis), so dense storage is used throughout.

#ifndef LDPFAIR_DISCRETE_SOURCE_H_
#define LDPFAIR_DISCRETE_SOURCE_H_

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"

namespace ldpfair {

using Rng = std::mt19937_64;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Entries within this distance of a stochastic normalization are accepted
// and renormalized; anything worse is rejected.
inline constexpr double kNormalizationSlack = 1e-9;

// Dense 3-axis probability array, row-major (last index fastest).
struct Array3 {
  int n0 = 0, n1 = 0, n2 = 0;
  std::vector<double> values;

  Array3() = default;
  Array3(int a, int b, int c) : n0(a), n1(b), n2(c), values(a * b * c, 0.0) {}

  double& at(int i, int j, int k) { return values[(i * n1 + j) * n2 + k]; }
  double at(int i, int j, int k) const { return values[(i * n1 + j) * n2 + k]; }
};

// Row-stochastic conditional distribution p(out | in).
class Channel {
 public:
  // `rows` is in_card x out_card. Rows within kNormalizationSlack of unit mass
  // are renormalized.
  static absl::StatusOr<Channel> Create(Matrix rows);
  static absl::StatusOr<Channel> FromRowMajor(int in_card, int out_card,
                                              const std::vector<double>& v);

  static Channel Identity(int n);
  // Every input maps to `symbol` with probability one.
  static Channel Constant(int in_card, int out_card, int symbol);
  static Channel Uniform(int in_card, int out_card);

  int in_card() const { return static_cast<int>(rows_.rows()); }
  int out_card() const { return static_cast<int>(rows_.cols()); }
  double operator()(int in, int out) const { return rows_(in, out); }
  const Matrix& matrix() const { return rows_; }

 private:
  explicit Channel(Matrix rows) : rows_(std::move(rows)) {}
  Matrix rows_;
};

// Channel a (in -> mid) followed by channel b (mid -> out).
absl::StatusOr<Channel> Compose(const Channel& a, const Channel& b);

struct UsxSample {
  int u, s, x;
  bool operator==(const UsxSample&) const = default;
};

// Exact joint distribution of the utility U, sensitive S and data X.
class JointSourceUSX {
 public:
  static absl::StatusOr<JointSourceUSX> Create(Array3 probs);

  int card_u() const { return probs_.n0; }
  int card_s() const { return probs_.n1; }
  int card_x() const { return probs_.n2; }
  double operator()(int u, int s, int x) const { return probs_.at(u, s, x); }
  const Array3& probs() const { return probs_; }

  Vector MarginalU() const;
  Vector MarginalS() const;
  Vector MarginalX() const;
  // card_u x card_x joint of (U, X).
  Matrix JointUX() const;
  // card_s x card_x joint of (S, X).
  Matrix JointSX() const;

  // n >= 1 i.i.d. draws; identical seeds give identical sequences.
  absl::StatusOr<std::vector<UsxSample>> Sample(int n, std::uint64_t seed) const;

 private:
  explicit JointSourceUSX(Array3 probs) : probs_(std::move(probs)) {}
  Array3 probs_;
};

// Axes of the full joint p(u, s, x, z).
enum class Axis { kU = 0, kS = 1, kX = 2, kZ = 3 };

// p(u, s, x, z) = p(u, s, x) p(z | x).
class JointFull {
 public:
  int card(Axis a) const { return dims_[static_cast<int>(a)]; }
  double operator()(int u, int s, int x, int z) const {
    return probs_[((u * dims_[1] + s) * dims_[2] + x) * dims_[3] + z];
  }
  const std::vector<double>& values() const { return probs_; }

  // Two-axis marginal, rows indexed by `a`, columns by `b`.
  Matrix PairMarginal(Axis a, Axis b) const;
  // Three-axis marginal in the order (a, b, c).
  Array3 TripleMarginal(Axis a, Axis b, Axis c) const;
  // Sums out z; recovers the source joint.
  Array3 SourceMarginal() const;

 private:
  friend absl::StatusOr<JointFull> InducedJoint(const JointSourceUSX&,
                                                const Channel&);
  std::array<int, 4> dims_{};
  std::vector<double> probs_;
};

absl::StatusOr<JointFull> InducedJoint(const JointSourceUSX& src,
                                       const Channel& enc);

// Random source with Dirichlet(alpha)-distributed cell masses.
JointSourceUSX RandomSource(int card_u, int card_s, int card_x,
                            std::uint64_t seed, double alpha = 1.0);
// Random row-stochastic channel with Dirichlet(alpha) rows.
Channel RandomChannel(int in_card, int out_card, Rng& rng, double alpha = 1.0);

// Text formats. Source: "U S X" header then one probability per line in
// row-major (u, s, x) order. Channel: "in out" header then one row per line.
std::string FormatSource(const JointSourceUSX& src);
absl::StatusOr<JointSourceUSX> ParseSource(const std::string& text);
std::string FormatChannel(const Channel& ch);
absl::StatusOr<Channel> ParseChannel(const std::string& text);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, const std::string& contents);

}  // namespace ldpfair

#endif  // LDPFAIR_DISCRETE_SOURCE_H_
