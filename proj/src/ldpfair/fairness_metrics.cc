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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_format.h"
#include "json.hpp"
#include "ldpfair/status_macros.h"

namespace ldpfair {

absl::StatusOr<double> DeltaDp(std::span<const int> preds,
                               std::span<const int> s) {
  if (preds.size() != s.size()) {
    return absl::InvalidArgumentError("delta_dp: unaligned inputs");
  }
  double pos[2] = {0, 0}, cnt[2] = {0, 0};
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (s[i] != 0 && s[i] != 1) {
      return absl::InvalidArgumentError("delta_dp: S must be binary");
    }
    cnt[s[i]] += 1;
    pos[s[i]] += preds[i] == 1;
  }
  for (int g = 0; g < 2; ++g) {
    if (cnt[g] == 0) {
      return absl::FailedPreconditionError(
          absl::StrFormat("delta_dp: group S=%d is empty", g));
    }
  }
  return std::abs(pos[0] / cnt[0] - pos[1] / cnt[1]);
}

absl::StatusOr<double> DeltaEo(std::span<const int> preds,
                               std::span<const int> s,
                               std::span<const int> u) {
  if (preds.size() != s.size() || preds.size() != u.size()) {
    return absl::InvalidArgumentError("delta_eo: unaligned inputs");
  }
  double pos[2][2] = {}, cnt[2][2] = {};
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (s[i] < 0 || s[i] > 1 || u[i] < 0 || u[i] > 1) {
      return absl::InvalidArgumentError("delta_eo: S and U must be binary");
    }
    cnt[s[i]][u[i]] += 1;
    pos[s[i]][u[i]] += preds[i] == 1;
  }
  double gap = 0.0;
  for (int uu = 0; uu < 2; ++uu) {
    for (int g = 0; g < 2; ++g) {
      if (cnt[g][uu] == 0) {
        return absl::FailedPreconditionError(
            absl::StrFormat("delta_eo: cell S=%d, U=%d is empty", g, uu));
      }
    }
    gap = std::max(gap, std::abs(pos[0][uu] / cnt[0][uu] -
                                 pos[1][uu] / cnt[1][uu]));
  }
  return gap;
}

double Accuracy(std::span<const int> preds, std::span<const int> labels) {
  if (labels.empty()) return 0.0;
  std::size_t hit = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) hit += preds[i] == labels[i];
  return static_cast<double>(hit) / labels.size();
}

double BalancedAccuracy(std::span<const int> preds,
                        std::span<const int> labels) {
  if (labels.empty()) return 0.0;
  const int card = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<double> hit(card, 0.0), cnt(card, 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    cnt[labels[i]] += 1;
    hit[labels[i]] += preds[i] == labels[i];
  }
  double total = 0.0;
  int present = 0;
  for (int c = 0; c < card; ++c) {
    if (cnt[c] > 0) {
      total += hit[c] / cnt[c];
      ++present;
    }
  }
  return total / present;
}

absl::StatusOr<DownstreamResult> TrainDownstream(
    const Matrix& train_z, const std::vector<int>& train_y,
    const Matrix& test_z, const std::vector<int>& test_y, int card,
    std::uint64_t seed, const ClassifierConfig& cfg) {
  if (train_z.rows() == 0 || train_z.rows() != static_cast<long>(train_y.size()) ||
      test_z.rows() != static_cast<long>(test_y.size()) ||
      train_z.cols() != test_z.cols()) {
    return absl::InvalidArgumentError("downstream: empty or unaligned data");
  }
  if (card < 2 || cfg.hidden < 1 || cfg.epochs < 0 || cfg.batch_size < 1) {
    return absl::InvalidArgumentError("downstream: bad configuration");
  }
  for (int y : train_y)
    if (y < 0 || y >= card)
      return absl::InvalidArgumentError("downstream: label out of range");
  Rng rng(seed);
  DownstreamResult res;
  res.model = ad::Mlp(
      ad::MlpSpec::Make(static_cast<int>(train_z.cols()), {cfg.hidden}, card,
                        ad::Activation::kRelu, ad::Activation::kIdentity),
      rng);
  res.degenerate = std::adjacent_find(train_y.begin(), train_y.end(),
                                      std::not_equal_to<>()) == train_y.end();
  ad::AdamOptions opts;
  opts.learning_rate = cfg.learning_rate;
  ad::Adam adam(res.model.Parameters(), opts);
  const int n = static_cast<int>(train_z.rows());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int e = 0; e < cfg.epochs && !res.degenerate; ++e) {
    std::shuffle(order.begin(), order.end(), rng);
    for (int start = 0; start < n; start += cfg.batch_size) {
      const int nb = std::min(cfg.batch_size, n - start);
      Matrix xb(nb, train_z.cols());
      std::vector<int> yb(nb);
      for (int i = 0; i < nb; ++i) {
        xb.row(i) = train_z.row(order[start + i]);
        yb[i] = train_y[order[start + i]];
      }
      const ad::Tensor lp =
          ad::LogSoftmaxRows(res.model.Forward(ad::Tensor::Constant(xb)));
      const ad::Tensor loss = ad::Neg(ad::Mean(ad::PickPerRow(lp, yb)));
      if (!std::isfinite(loss.item())) {
        return absl::InternalError("downstream: non-finite loss");
      }
      ad::Backward(loss);
      adam.Step();
    }
  }
  if (res.degenerate) {
    res.test_predictions.assign(test_y.size(), train_y.front());
  } else {
    const Matrix logits =
        res.model.Forward(ad::Tensor::Constant(test_z)).value();
    res.test_predictions.resize(test_y.size());
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
      Eigen::Index k;
      logits.row(i).maxCoeff(&k);
      res.test_predictions[i] = static_cast<int>(k);
    }
  }
  res.accuracy = Accuracy(res.test_predictions, test_y);
  return res;
}

absl::StatusOr<double> SensitiveAccuracy(const Matrix& train_z,
                                         const std::vector<int>& train_s,
                                         const Matrix& test_z,
                                         const std::vector<int>& test_s,
                                         std::uint64_t seed,
                                         const ClassifierConfig& cfg) {
  if (train_s.empty() ||
      std::adjacent_find(train_s.begin(), train_s.end(),
                         std::not_equal_to<>()) == train_s.end()) {
    return absl::FailedPreconditionError(
        "sensitive accuracy: S has a single class");
  }
  const int card = *std::max_element(train_s.begin(), train_s.end()) + 1;
  ASSIGN_OR_RETURN(DownstreamResult r,
                   TrainDownstream(train_z, train_s, test_z, test_s,
                                   std::max(card, 2), seed, cfg));
  return BalancedAccuracy(r.test_predictions, test_s);
}

absl::StatusOr<EvalReport> EvaluateModel(const EncoderModel& model,
                                         const TabularDataset& train,
                                         const TabularDataset& test,
                                         std::uint64_t seed,
                                         const EvalOptions& opts) {
  Rng rng(seed);
  ASSIGN_OR_RETURN(Embedding tr, EmbedDataset(model, train.x, rng));
  ASSIGN_OR_RETURN(Embedding te, EmbedDataset(model, test.x, rng));
  EvalReport rep;
  rep.seed = seed;
  const std::vector<int> preds = PredictUtility(model, te.z);
  rep.accuracy = Accuracy(preds, test.u);
  ASSIGN_OR_RETURN(rep.delta_dp, DeltaDp(preds, test.s));
  ASSIGN_OR_RETURN(rep.delta_eo, DeltaEo(preds, test.s, test.u));
  const ModelSpec& spec = model.spec();
  if (spec.mode == EncoderMode::kDiscrete) {
    int symbols = 1;
    for (int j = 0; j < spec.d; ++j) symbols *= spec.codebook_size;
    ASSIGN_OR_RETURN(rep.leakage_isz,
                     PluginMutualInformation(te.symbols, test.s, symbols,
                                             test.card_s));
  } else {
    Matrix s_col(test.rows(), 1);
    for (int i = 0; i < test.rows(); ++i) s_col(i, 0) = test.s[i];
    ASSIGN_OR_RETURN(MineResult mine,
                     MineEstimate(te.z, s_col, opts.mine, seed));
    rep.leakage_isz = std::max(0.0, mine.estimate);
  }
  ASSIGN_OR_RETURN(rep.sensitive_accuracy,
                   SensitiveAccuracy(tr.z, train.s, te.z, test.s, seed + 1,
                                     opts.attacker));
  return rep;
}

namespace {

FieldStats Stats(std::vector<double> v) {
  FieldStats f;
  if (v.empty()) return f;
  f.mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - f.mean) * (x - f.mean);
    f.stddev = std::sqrt(ss / (v.size() - 1));
  }
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  f.median = v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  return f;
}

}  // namespace

AggregateReport Aggregate(std::vector<EvalReport> runs) {
  AggregateReport a;
  auto field = [&](double EvalReport::*m) {
    std::vector<double> v;
    for (const EvalReport& r : runs) v.push_back(r.*m);
    return Stats(std::move(v));
  };
  a.accuracy = field(&EvalReport::accuracy);
  a.delta_dp = field(&EvalReport::delta_dp);
  a.delta_eo = field(&EvalReport::delta_eo);
  a.leakage_isz = field(&EvalReport::leakage_isz);
  a.sensitive_accuracy = field(&EvalReport::sensitive_accuracy);
  a.runs = std::move(runs);
  return a;
}

std::string ReportJson(const AggregateReport& report,
                       const std::string& config_hash) {
  using nlohmann::json;
  auto stats = [](const FieldStats& f) {
    return json{{"mean", f.mean}, {"std", f.stddev}, {"median", f.median}};
  };
  json j;
  j["config_hash"] = config_hash;
  j["accuracy"] = report.accuracy.mean;
  j["delta_dp"] = report.delta_dp.mean;
  j["delta_eo"] = report.delta_eo.mean;
  j["leakage_isz_nats"] = report.leakage_isz.mean;
  j["sensitive_accuracy"] = report.sensitive_accuracy.mean;
  json seeds = json::array(), runs = json::array();
  for (const EvalReport& r : report.runs) {
    seeds.push_back(r.seed);
    runs.push_back({{"seed", r.seed},
                    {"accuracy", r.accuracy},
                    {"delta_dp", r.delta_dp},
                    {"delta_eo", r.delta_eo},
                    {"leakage_isz_nats", r.leakage_isz},
                    {"sensitive_accuracy", r.sensitive_accuracy}});
  }
  j["seeds"] = seeds;
  j["mean_std"] = {{"accuracy", stats(report.accuracy)},
                   {"delta_dp", stats(report.delta_dp)},
                   {"delta_eo", stats(report.delta_eo)},
                   {"leakage_isz_nats", stats(report.leakage_isz)},
                   {"sensitive_accuracy", stats(report.sensitive_accuracy)}};
  j["runs"] = runs;
  return j.dump(2) + "\n";
}

}  // namespace ldpfair
