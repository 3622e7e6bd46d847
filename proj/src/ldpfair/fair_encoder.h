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

// Variational fair encoder with an epsilon-LDP mechanism inside every forward
// pass. The continuous path truncates with t * tanh and adds Laplace noise;
// the discrete path vector-quantizes d feature blocks against a K x D
// codebook and randomizes the code indices.

#ifndef LDPFAIR_FAIR_ENCODER_H_
#define LDPFAIR_FAIR_ENCODER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpfair/autodiff.h"
#include "ldpfair/datasets.h"
#include "ldpfair/discrete_source.h"
#include "ldpfair/ldp_mechanisms.h"

namespace ldpfair {

enum class EncoderMode { kContinuous, kDiscrete };

std::string EncoderModeName(EncoderMode m);
absl::StatusOr<EncoderMode> ParseEncoderMode(const std::string& name);

struct ModelSpec {
  EncoderMode mode = EncoderMode::kContinuous;
  FeatureLayout layout;
  int card_u = 2;
  int card_s = 2;
  int d = 2;          // representation dimensions
  int codebook_size = 4;  // K
  int code_dim = 8;       // D
  double t = 0.5;
  double epsilon = 5.0;
  int hidden = 100;

  // Width of the representation consumed by the decoders.
  int z_dim() const { return mode == EncoderMode::kContinuous ? d : d * code_dim; }
};

absl::Status ValidateModelSpec(const ModelSpec& spec);

// Mechanism randomness for one forward pass, n x d each. Continuous mode uses
// `laplace`; discrete mode uses `keep` and `replace` (uniforms on [0, 1)).
struct MechanismDraws {
  Matrix laplace;
  Matrix keep;
  Matrix replace;
};

struct QuantizeResult {
  int index = 0;
  Vector embedding;
  double codebook_loss = 0.0;
  double commitment_loss = 0.0;
};

// Nearest codebook row, ties to the lowest index.
QuantizeResult Quantize(const Vector& features, const Matrix& codebook);

struct ForwardPass {
  ad::Tensor zhat;  // continuous: n x d in [-t, t]; discrete: n x d*D features
  ad::Tensor z;     // randomized representation, n x z_dim
  std::vector<int> indices;        // discrete: n x d row-major, pre-mechanism
  std::vector<int> noisy_indices;  // discrete: after randomized response
  ad::Tensor codebook_loss;        // discrete: batch mean, else 0
  ad::Tensor commitment_loss;
};

struct LossBreakdown {
  double recon = 0.0;    // side-decoder negative log-likelihood
  double utility = 0.0;  // utility-decoder negative log-likelihood
  double vq_codebook = 0.0;
  double vq_commit = 0.0;
  double total = 0.0;    // recon + beta * utility + codebook + lambda * commit
};

struct TrainConfig {
  double beta = 1.0;
  int mc_samples = 1;
  int epochs = 10;
  int batch_size = 512;
  double learning_rate = 1e-3;
  double vq_lambda = 0.25;
  std::uint64_t seed = 0;
};

absl::Status ValidateTrainConfig(const TrainConfig& cfg);

class EncoderModel {
 public:
  static absl::StatusOr<EncoderModel> Create(const ModelSpec& spec,
                                             std::uint64_t seed);

  const ModelSpec& spec() const { return spec_; }
  const ad::Mlp& encoder() const { return encoder_; }
  const ad::Mlp& utility_decoder() const { return utility_; }
  const ad::Mlp& side_decoder() const { return side_; }
  const ad::Tensor& codebook() const { return codebook_; }
  std::vector<ad::Tensor> Parameters() const;
  // Deep copy; a plain copy shares parameters.
  EncoderModel Clone() const;

  MechanismDraws DrawMechanism(int n, Rng& rng) const;

  // Encoder and mechanism on a batch of feature rows.
  ForwardPass Forward(const Matrix& x, const MechanismDraws& draws) const;

  // Utility-decoder log-probabilities (n x card_u) for representations z.
  ad::Tensor UtilityLogProbs(const ad::Tensor& z) const;

  absl::Status Save(const std::string& path) const;
  static absl::StatusOr<EncoderModel> Load(const std::string& path);

 private:
  EncoderModel() = default;
  ModelSpec spec_;
  ad::Mlp encoder_;
  ad::Mlp utility_;
  ad::Mlp side_;
  ad::Tensor codebook_;  // K x D, discrete only
};

struct LossGraph {
  ad::Tensor total;
  LossBreakdown parts;
};

// Negated Monte Carlo objective averaged over the batch and over
// draws.size() mechanism samples.
LossGraph McLossGraph(const EncoderModel& model, const Matrix& x,
                      const std::vector<int>& u, const std::vector<int>& s,
                      double beta, double vq_lambda,
                      const std::vector<MechanismDraws>& draws);

absl::StatusOr<LossBreakdown> McLoss(const EncoderModel& model,
                                     const Matrix& x, const std::vector<int>& u,
                                     const std::vector<int>& s,
                                     const TrainConfig& cfg, Rng& rng);

// Minibatch Adam; returns one batch-averaged breakdown per epoch.
absl::StatusOr<std::vector<LossBreakdown>> Train(EncoderModel& model,
                                                 const TabularDataset& data,
                                                 const TrainConfig& cfg);

std::string HistoryCsv(const std::vector<LossBreakdown>& history);

struct Embedding {
  Matrix zhat;               // pre-mechanism values (continuous) or features
  Matrix z;                  // randomized representation
  std::vector<int> indices;  // discrete: randomized codes, n x d row-major
  // Discrete: flattened code vector in [0, K^d), first block most significant.
  std::vector<int> symbols;
};

// One mechanism draw per row.
absl::StatusOr<Embedding> EmbedDataset(const EncoderModel& model,
                                       const Matrix& x, Rng& rng);

// Argmax of the utility decoder.
std::vector<int> PredictUtility(const EncoderModel& model, const Matrix& z);

// Exact table-level variational objective on a finite joint over (u, s, x, z).
// q_x_zs has one row per (z, s) pair, index z * |S| + s, and |X| columns;
// q_u_z is |Z| x |U|.
struct DecoderTables {
  Matrix q_x_zs;
  Matrix q_u_z;
};

// E[log q(x|z,s) + beta log q(u|z)].
double VariationalObjective(const JointFull& joint, const DecoderTables& q,
                            double beta);
// -H(X|Z,S) - beta H(U|Z).
double TrueObjective(const JointFull& joint, double beta);
// Posteriors p(x|z,s) and p(u|z); rows with zero mass are uniform.
DecoderTables TruePosteriors(const JointFull& joint);

}  // namespace ldpfair

#endif  // LDPFAIR_FAIR_ENCODER_H_
