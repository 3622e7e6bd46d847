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

#include "absl/strings/str_format.h"
#include "ldpfair/autodiff.h"

namespace ldpfair {
namespace {

double Clamp0(double v) { return (v < 0.0 && v > -kInfoClampTolerance) ? 0.0 : v; }

absl::Status ValidateMass(std::span<const double> v, const char* what) {
  double total = 0.0;
  for (double p : v) {
    if (!std::isfinite(p) || p < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrFormat("%s: invalid probability %g", what, p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationSlack) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s: mass %.17g is not 1", what, total));
  }
  return absl::OkStatus();
}

double NegXLogX(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

}  // namespace

absl::StatusOr<double> Entropy(std::span<const double> dist) {
  if (dist.empty()) return absl::InvalidArgumentError("entropy: empty input");
  auto st = ValidateMass(dist, "entropy");
  if (!st.ok()) return st;
  double h = 0.0;
  for (double p : dist) h += NegXLogX(p);
  return Clamp0(h);
}

absl::StatusOr<double> Entropy(const Vector& dist) {
  return Entropy(std::span<const double>(dist.data(), dist.size()));
}

absl::StatusOr<double> MutualInformation(const Matrix& joint) {
  if (joint.size() == 0) return absl::InvalidArgumentError("mi: empty joint");
  auto st = ValidateMass(std::span<const double>(joint.data(), joint.size()),
                         "mutual information");
  if (!st.ok()) return st;
  const Vector pa = joint.rowwise().sum();
  const Vector pb = joint.colwise().sum().transpose();
  double mi = 0.0;
  for (Eigen::Index i = 0; i < joint.rows(); ++i) {
    for (Eigen::Index j = 0; j < joint.cols(); ++j) {
      const double p = joint(i, j);
      if (p > 0.0) mi += p * std::log(p / (pa(i) * pb(j)));
    }
  }
  return Clamp0(mi);
}

absl::StatusOr<double> ConditionalMutualInformation(const Array3& joint_xzs) {
  if (joint_xzs.values.empty()) {
    return absl::InvalidArgumentError("cmi: empty joint");
  }
  auto st = ValidateMass(joint_xzs.values, "conditional mutual information");
  if (!st.ok()) return st;
  const int nx = joint_xzs.n0, nz = joint_xzs.n1, ns = joint_xzs.n2;
  double cmi = 0.0;
  for (int s = 0; s < ns; ++s) {
    double ps = 0.0;
    Vector px = Vector::Zero(nx), pz = Vector::Zero(nz);
    for (int x = 0; x < nx; ++x)
      for (int z = 0; z < nz; ++z) {
        const double p = joint_xzs.at(x, z, s);
        ps += p;
        px(x) += p;
        pz(z) += p;
      }
    if (ps <= 0.0) continue;
    // sum_{x,z} p(x,z,s) log[p(x,z,s) p(s) / (p(x,s) p(z,s))]
    for (int x = 0; x < nx; ++x)
      for (int z = 0; z < nz; ++z) {
        const double p = joint_xzs.at(x, z, s);
        if (p > 0.0) cmi += p * std::log(p * ps / (px(x) * pz(z)));
      }
  }
  return Clamp0(cmi);
}

absl::StatusOr<double> PluginMutualInformation(std::span<const int> a,
                                               std::span<const int> b,
                                               int card_a, int card_b,
                                               double smoothing) {
  if (a.size() != b.size()) {
    return absl::InvalidArgumentError("plugin mi: unpaired samples");
  }
  if (a.size() < 2) {
    return absl::InvalidArgumentError("plugin mi: need at least 2 samples");
  }
  if (card_a <= 0 || card_b <= 0 || smoothing < 0.0) {
    return absl::InvalidArgumentError("plugin mi: bad cardinality/smoothing");
  }
  Matrix counts = Matrix::Constant(card_a, card_b, smoothing);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || a[i] >= card_a || b[i] < 0 || b[i] >= card_b) {
      return absl::InvalidArgumentError(
          absl::StrFormat("plugin mi: label pair (%d, %d) out of range", a[i],
                          b[i]));
    }
    counts(a[i], b[i]) += 1.0;
  }
  counts /= counts.sum();
  return MutualInformation(counts);
}

absl::StatusOr<MineResult> MineEstimate(const Matrix& a, const Matrix& b,
                                        const MineConfig& cfg,
                                        std::uint64_t seed) {
  if (a.rows() != b.rows()) {
    return absl::InvalidArgumentError("mine: sample sets differ in length");
  }
  if (a.rows() < 1000) {
    return absl::InvalidArgumentError(
        absl::StrFormat("mine: need >= 1000 samples, got %d", a.rows()));
  }
  if (cfg.iterations < cfg.averaging_window || cfg.averaging_window < 1 ||
      cfg.ema_rate <= 0.0 || cfg.ema_rate > 1.0 || cfg.batch_size < 2) {
    return absl::InvalidArgumentError("mine: invalid configuration");
  }
  const Eigen::Index n = a.rows();
  const Eigen::Index batch = std::min<Eigen::Index>(cfg.batch_size, n);
  const int da = static_cast<int>(a.cols()), db = static_cast<int>(b.cols());

  Rng rng(seed);
  ad::Mlp net(ad::MlpSpec::Make(da + db, cfg.hidden, 1, ad::Activation::kRelu6,
                                ad::Activation::kIdentity),
              rng);
  ad::Adam opt(net.Parameters(), {.learning_rate = cfg.learning_rate});

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> perm(batch);
  Eigen::Index cursor = n;
  double ema = -1.0;

  MineResult result;
  result.trace.reserve(cfg.iterations);
  Matrix joint(batch, da + db), marginal(batch, da + db);
  for (int it = 0; it < cfg.iterations; ++it) {
    if (cursor + batch > n) {
      std::shuffle(order.begin(), order.end(), rng);
      cursor = 0;
    }
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Eigen::Index i = 0; i < batch; ++i) {
      const int r = order[cursor + i];
      const int rp = order[cursor + perm[i]];
      joint.row(i) << a.row(r), b.row(r);
      marginal.row(i) << a.row(r), b.row(rp);
    }
    cursor += batch;

    ad::Tensor t_joint = net.Forward(ad::Tensor::Constant(joint));
    ad::Tensor t_marg = net.Forward(ad::Tensor::Constant(marginal));
    ad::Tensor mean_joint = ad::Mean(t_joint);
    ad::Tensor exp_marg = ad::Exp(t_marg);
    const double batch_partition = exp_marg.value().mean();
    const double dv = mean_joint.item() - ad::LogMeanExp(t_marg).item();
    if (!std::isfinite(dv) || !std::isfinite(batch_partition)) {
      return absl::InternalError(absl::StrFormat(
          "mine: non-finite value at iteration %d (try a lower learning rate)",
          it));
    }
    result.trace.push_back(dv);

    ema = ema < 0.0 ? batch_partition
                    : (1.0 - cfg.ema_rate) * ema + cfg.ema_rate * batch_partition;
    // Bias-corrected gradient: d/dθ [mean T_joint - mean(e^T_marg) / ema].
    ad::Tensor surrogate =
        ad::Sub(mean_joint, ad::Scale(ad::Mean(exp_marg), 1.0 / ema));
    ad::Backward(ad::Neg(surrogate));
    opt.Step();
  }
  const int w = cfg.averaging_window;
  result.estimate =
      std::accumulate(result.trace.end() - w, result.trace.end(), 0.0) / w;
  return result;
}

}  // namespace ldpfair
