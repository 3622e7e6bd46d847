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

// Group-fairness gaps, downstream and attacker classifiers, and the
// evaluation report for a trained encoder.

#ifndef LDPFAIR_FAIRNESS_METRICS_H_
#define LDPFAIR_FAIRNESS_METRICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpfair/autodiff.h"
#include "ldpfair/datasets.h"
#include "ldpfair/fair_encoder.h"
#include "ldpfair/info_measures.h"

namespace ldpfair {

// |Pr[pred=1 | S=0] - Pr[pred=1 | S=1]|. Errors when a group is empty.
absl::StatusOr<double> DeltaDp(std::span<const int> preds,
                               std::span<const int> s);

// max over u of |Pr[pred=1 | S=0, U=u] - Pr[pred=1 | S=1, U=u]|. Errors when
// any (S, U) cell is empty.
absl::StatusOr<double> DeltaEo(std::span<const int> preds,
                               std::span<const int> s,
                               std::span<const int> u);

double Accuracy(std::span<const int> preds, std::span<const int> labels);
// Mean per-class recall over the classes present in `labels`.
double BalancedAccuracy(std::span<const int> preds,
                        std::span<const int> labels);

struct ClassifierConfig {
  int hidden = 100;
  int epochs = 20;
  int batch_size = 256;
  double learning_rate = 1e-3;
};

struct DownstreamResult {
  ad::Mlp model;
  std::vector<int> test_predictions;
  double accuracy = 0.0;
  // Training labels had a single class.
  bool degenerate = false;
};

// One-hidden-layer ReLU classifier trained with Adam on (train_z, train_y)
// and scored on (test_z, test_y).
absl::StatusOr<DownstreamResult> TrainDownstream(
    const Matrix& train_z, const std::vector<int>& train_y,
    const Matrix& test_z, const std::vector<int>& test_y, int card,
    std::uint64_t seed, const ClassifierConfig& cfg = {});

// Balanced test accuracy of an attacker reconstructing S from Z. Errors when
// S has a single class.
absl::StatusOr<double> SensitiveAccuracy(const Matrix& train_z,
                                         const std::vector<int>& train_s,
                                         const Matrix& test_z,
                                         const std::vector<int>& test_s,
                                         std::uint64_t seed,
                                         const ClassifierConfig& cfg = {});

struct EvalReport {
  double accuracy = 0.0;
  double delta_dp = 0.0;
  double delta_eo = 0.0;
  double leakage_isz = 0.0;  // nats
  double sensitive_accuracy = 0.0;
  std::uint64_t seed = 0;
};

struct EvalOptions {
  MineConfig mine;
  ClassifierConfig attacker;
};

// Embeds both splits with one mechanism draw per row, predicts U on the test
// split with the utility decoder, estimates I(S;Z) (plug-in for discrete Z,
// MINE for continuous Z) and trains the attacker on the train split.
absl::StatusOr<EvalReport> EvaluateModel(const EncoderModel& model,
                                         const TabularDataset& train,
                                         const TabularDataset& test,
                                         std::uint64_t seed,
                                         const EvalOptions& opts = {});

struct FieldStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for one run
  double median = 0.0;
};

struct AggregateReport {
  std::vector<EvalReport> runs;
  FieldStats accuracy, delta_dp, delta_eo, leakage_isz, sensitive_accuracy;
};

AggregateReport Aggregate(std::vector<EvalReport> runs);

// {accuracy, delta_dp, delta_eo, leakage_isz_nats, sensitive_accuracy, seeds,
//  mean_std, runs, config_hash}.
std::string ReportJson(const AggregateReport& report,
                       const std::string& config_hash);

}  // namespace ldpfair

#endif  // LDPFAIR_FAIRNESS_METRICS_H_
