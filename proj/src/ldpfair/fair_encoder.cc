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

#include "ldpfair/fair_encoder.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "absl/strings/str_format.h"
#include "ldpfair/status_macros.h"

namespace ldpfair {

using ad::Tensor;

std::string EncoderModeName(EncoderMode m) {
  return m == EncoderMode::kContinuous ? "continuous" : "discrete";
}

absl::StatusOr<EncoderMode> ParseEncoderMode(const std::string& name) {
  if (name == "continuous" || name == "con") return EncoderMode::kContinuous;
  if (name == "discrete" || name == "dis") return EncoderMode::kDiscrete;
  return absl::InvalidArgumentError("unknown encoder mode '" + name + "'");
}

absl::Status ValidateModelSpec(const ModelSpec& spec) {
  if (spec.layout.width < 1) {
    return absl::InvalidArgumentError("model: empty feature layout");
  }
  if (spec.card_u < 2 || spec.card_s < 2) {
    return absl::InvalidArgumentError("model: |U| and |S| must be >= 2");
  }
  if (spec.d < 1 || spec.hidden < 1) {
    return absl::InvalidArgumentError("model: d and hidden must be positive");
  }
  if (spec.mode == EncoderMode::kContinuous) {
    if (!(spec.t > 0.0)) {
      return absl::InvalidArgumentError("model: truncation t must be > 0");
    }
    RETURN_IF_ERROR(LaplaceMechanism::Create(spec.epsilon, spec.t, spec.d)
                        .status());
  } else {
    if (spec.code_dim < 1) {
      return absl::InvalidArgumentError("model: code dimension D must be >= 1");
    }
    RETURN_IF_ERROR(
        RandomizedResponse::Create(spec.epsilon, spec.codebook_size, spec.d)
            .status());
  }
  return absl::OkStatus();
}

absl::Status ValidateTrainConfig(const TrainConfig& cfg) {
  if (!(cfg.beta >= 0.0) || !std::isfinite(cfg.beta)) {
    return absl::InvalidArgumentError("train: beta must be >= 0");
  }
  if (cfg.mc_samples < 1) {
    return absl::InvalidArgumentError("train: mc_samples must be >= 1");
  }
  if (cfg.epochs < 0 || cfg.batch_size < 1) {
    return absl::InvalidArgumentError("train: bad epochs or batch size");
  }
  if (!(cfg.learning_rate > 0.0) || !(cfg.vq_lambda > 0.0)) {
    return absl::InvalidArgumentError(
        "train: learning rate and vq_lambda must be positive");
  }
  return absl::OkStatus();
}

QuantizeResult Quantize(const Vector& features, const Matrix& codebook) {
  QuantizeResult r;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < codebook.rows(); ++j) {
    const double dist = (codebook.row(j).transpose() - features).squaredNorm();
    if (dist < best) {
      best = dist;
      r.index = static_cast<int>(j);
    }
  }
  r.embedding = codebook.row(r.index).transpose();
  r.codebook_loss = best;
  r.commitment_loss = best;
  return r;
}

absl::StatusOr<EncoderModel> EncoderModel::Create(const ModelSpec& spec,
                                                  std::uint64_t seed) {
  RETURN_IF_ERROR(ValidateModelSpec(spec));
  Rng rng(seed);
  EncoderModel m;
  m.spec_ = spec;
  const int enc_out = spec.mode == EncoderMode::kContinuous
                          ? spec.d
                          : spec.d * spec.code_dim;
  using ad::Activation;
  m.encoder_ = ad::Mlp(ad::MlpSpec::Make(spec.layout.width, {spec.hidden},
                                         enc_out, Activation::kRelu,
                                         Activation::kIdentity),
                       rng);
  m.utility_ = ad::Mlp(
      ad::MlpSpec::Make(spec.z_dim(), {spec.hidden, spec.hidden}, spec.card_u,
                        Activation::kRelu, Activation::kIdentity),
      rng);
  m.side_ = ad::Mlp(
      ad::MlpSpec::Make(spec.z_dim() + spec.card_s, {spec.hidden},
                        spec.layout.width, Activation::kRelu,
                        Activation::kIdentity),
      rng);
  if (spec.mode == EncoderMode::kDiscrete) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Matrix cb(spec.codebook_size, spec.code_dim);
    for (Eigen::Index i = 0; i < cb.size(); ++i) cb(i) = unif(rng);
    m.codebook_ = Tensor::Parameter(std::move(cb));
  }
  return m;
}

std::vector<Tensor> EncoderModel::Parameters() const {
  std::vector<Tensor> p = encoder_.Parameters();
  for (const auto* mlp : {&utility_, &side_}) {
    auto q = mlp->Parameters();
    p.insert(p.end(), q.begin(), q.end());
  }
  if (codebook_.defined()) p.push_back(codebook_);
  return p;
}

EncoderModel EncoderModel::Clone() const {
  EncoderModel m;
  m.spec_ = spec_;
  m.encoder_ = encoder_.Clone();
  m.utility_ = utility_.Clone();
  m.side_ = side_.Clone();
  if (codebook_.defined()) m.codebook_ = Tensor::Parameter(codebook_.value());
  return m;
}

MechanismDraws EncoderModel::DrawMechanism(int n, Rng& rng) const {
  MechanismDraws d;
  if (spec_.mode == EncoderMode::kContinuous) {
    const LaplaceMechanism mech =
        *LaplaceMechanism::Create(spec_.epsilon, spec_.t, spec_.d);
    d.laplace.resize(n, spec_.d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < spec_.d; ++j) d.laplace(i, j) = mech.SampleNoise(rng);
  } else {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    d.keep.resize(n, spec_.d);
    d.replace.resize(n, spec_.d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < spec_.d; ++j) {
        d.keep(i, j) = unif(rng);
        d.replace(i, j) = unif(rng);
      }
  }
  return d;
}

ForwardPass EncoderModel::Forward(const Matrix& x,
                                  const MechanismDraws& draws) const {
  if (x.cols() != spec_.layout.width) {
    throw std::invalid_argument(absl::StrFormat(
        "encoder: input has %d columns, expected %d", x.cols(),
        spec_.layout.width));
  }
  const int n = static_cast<int>(x.rows());
  ForwardPass fp;
  const Tensor pre = encoder_.Forward(Tensor::Constant(x));
  if (spec_.mode == EncoderMode::kContinuous) {
    if (draws.laplace.rows() != n || draws.laplace.cols() != spec_.d) {
      throw std::invalid_argument("encoder: laplace draws have wrong shape");
    }
    fp.zhat = ad::Scale(ad::Tanh(pre), spec_.t);
    fp.z = ad::Add(fp.zhat, Tensor::Constant(draws.laplace));
    fp.codebook_loss = Tensor::Scalar(0.0);
    fp.commitment_loss = Tensor::Scalar(0.0);
    return fp;
  }
  if (draws.keep.rows() != n || draws.keep.cols() != spec_.d ||
      draws.replace.rows() != n || draws.replace.cols() != spec_.d) {
    throw std::invalid_argument("encoder: rr draws have wrong shape");
  }
  const RandomizedResponse rr =
      *RandomizedResponse::Create(spec_.epsilon, spec_.codebook_size, spec_.d);
  const int D = spec_.code_dim;
  fp.zhat = pre;
  fp.indices.assign(static_cast<std::size_t>(n) * spec_.d, 0);
  fp.noisy_indices.assign(fp.indices.size(), 0);
  const Matrix& cb = codebook_.value();
  std::vector<Tensor> blocks;
  Tensor cb_loss = Tensor::Scalar(0.0), commit = Tensor::Scalar(0.0);
  for (int j = 0; j < spec_.d; ++j) {
    const Tensor f = ad::SliceCols(pre, j * D, D);
    std::vector<int> idx(n), noisy(n);
    for (int i = 0; i < n; ++i) {
      idx[i] = Quantize(f.value().row(i).transpose(), cb).index;
      noisy[i] = rr.RandomizeSymbol(idx[i], draws.keep(i, j),
                                    draws.replace(i, j));
      fp.indices[i * spec_.d + j] = idx[i];
      fp.noisy_indices[i * spec_.d + j] = noisy[i];
    }
    const Tensor e = ad::GatherRows(codebook_, idx);
    cb_loss = ad::Add(cb_loss,
                      ad::Sum(ad::Square(ad::Sub(ad::StopGradient(f), e))));
    commit = ad::Add(commit,
                     ad::Sum(ad::Square(ad::Sub(f, ad::StopGradient(e)))));
    const Tensor e_noisy = ad::GatherRows(codebook_, noisy);
    // Straight-through: value of e_noisy, gradient of f.
    blocks.push_back(
        ad::Add(f, ad::StopGradient(ad::Sub(e_noisy, f))));
  }
  fp.z = ad::ConcatCols(blocks);
  fp.codebook_loss = ad::Scale(cb_loss, 1.0 / n);
  fp.commitment_loss = ad::Scale(commit, 1.0 / n);
  return fp;
}

Tensor EncoderModel::UtilityLogProbs(const Tensor& z) const {
  return ad::LogSoftmaxRows(utility_.Forward(z));
}

namespace {

Matrix OneHot(const std::vector<int>& labels, int card) {
  Matrix m = Matrix::Zero(labels.size(), card);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= card) {
      throw std::invalid_argument(
          absl::StrFormat("label %d out of range [0, %d)", labels[i], card));
    }
    m(i, labels[i]) = 1.0;
  }
  return m;
}

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

}  // namespace

LossGraph McLossGraph(const EncoderModel& model, const Matrix& x,
                      const std::vector<int>& u, const std::vector<int>& s,
                      double beta, double vq_lambda,
                      const std::vector<MechanismDraws>& draws) {
  const ModelSpec& spec = model.spec();
  const int n = static_cast<int>(x.rows());
  if (n == 0 || static_cast<int>(u.size()) != n ||
      static_cast<int>(s.size()) != n || draws.empty()) {
    throw std::invalid_argument("mc loss: empty or unaligned batch");
  }
  const FeatureLayout& layout = spec.layout;
  const Tensor s_onehot = Tensor::Constant(OneHot(s, spec.card_s));
  const Tensor x_const = Tensor::Constant(x);
  Matrix numeric_mask = Matrix::Zero(1, layout.width);
  for (int c : layout.numeric) numeric_mask(0, c) = 1.0;
  std::vector<std::vector<int>> group_targets;
  for (const auto& [start, width] : layout.groups) {
    std::vector<int> t(n);
    for (int i = 0; i < n; ++i) {
      Eigen::Index k;
      x.row(i).segment(start, width).maxCoeff(&k);
      t[i] = static_cast<int>(k);
    }
    group_targets.push_back(std::move(t));
  }

  const double inv_l = 1.0 / draws.size();
  Tensor recon = Tensor::Scalar(0.0), util = Tensor::Scalar(0.0);
  Tensor cb = Tensor::Scalar(0.0), commit = Tensor::Scalar(0.0);
  for (const MechanismDraws& d : draws) {
    const ForwardPass fp = model.Forward(x, d);
    const Tensor out =
        model.side_decoder().Forward(ad::ConcatCols({fp.z, s_onehot}));
    Tensor r = Tensor::Scalar(kHalfLog2Pi * layout.numeric.size());
    if (!layout.numeric.empty()) {
      const Tensor sq = ad::Mul(ad::Square(ad::Sub(out, x_const)),
                                Tensor::Constant(numeric_mask));
      r = ad::Add(r, ad::Scale(ad::Sum(sq), 0.5 / n));
    }
    for (std::size_t g = 0; g < layout.groups.size(); ++g) {
      const auto [start, width] = layout.groups[g];
      const Tensor ls = ad::LogSoftmaxRows(ad::SliceCols(out, start, width));
      r = ad::Sub(r, ad::Scale(ad::Sum(ad::PickPerRow(ls, group_targets[g])),
                               1.0 / n));
    }
    const Tensor lu = model.UtilityLogProbs(fp.z);
    const Tensor un = ad::Neg(ad::Mean(ad::PickPerRow(lu, u)));
    recon = ad::Add(recon, ad::Scale(r, inv_l));
    util = ad::Add(util, ad::Scale(un, inv_l));
    cb = ad::Add(cb, ad::Scale(fp.codebook_loss, inv_l));
    commit = ad::Add(commit, ad::Scale(fp.commitment_loss, inv_l));
  }
  LossGraph g;
  g.total = ad::Add(ad::Add(recon, ad::Scale(util, beta)),
                    ad::Add(cb, ad::Scale(commit, vq_lambda)));
  g.parts.recon = recon.item();
  g.parts.utility = util.item();
  g.parts.vq_codebook = cb.item();
  g.parts.vq_commit = commit.item();
  g.parts.total = g.total.item();
  return g;
}

namespace {

absl::Status CheckFinite(const LossBreakdown& b, const std::string& where) {
  const std::pair<const char*, double> terms[] = {
      {"recon", b.recon},
      {"utility", b.utility},
      {"vq_codebook", b.vq_codebook},
      {"vq_commit", b.vq_commit},
      {"total", b.total}};
  for (const auto& [name, v] : terms) {
    if (!std::isfinite(v)) {
      return absl::InternalError(
          absl::StrFormat("%s: non-finite %s term (%g)", where, name, v));
    }
  }
  return absl::OkStatus();
}

absl::Status CheckBatch(const EncoderModel& model, const Matrix& x,
                        const std::vector<int>& u, const std::vector<int>& s) {
  if (x.rows() == 0) return absl::InvalidArgumentError("empty batch");
  if (x.cols() != model.spec().layout.width) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "feature width %d does not match model input %d", x.cols(),
        model.spec().layout.width));
  }
  if (u.size() != static_cast<std::size_t>(x.rows()) ||
      s.size() != static_cast<std::size_t>(x.rows())) {
    return absl::InvalidArgumentError("labels not aligned with features");
  }
  for (int v : u)
    if (v < 0 || v >= model.spec().card_u)
      return absl::InvalidArgumentError("utility label out of range");
  for (int v : s)
    if (v < 0 || v >= model.spec().card_s)
      return absl::InvalidArgumentError("sensitive label out of range");
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<LossBreakdown> McLoss(const EncoderModel& model,
                                     const Matrix& x, const std::vector<int>& u,
                                     const std::vector<int>& s,
                                     const TrainConfig& cfg, Rng& rng) {
  RETURN_IF_ERROR(ValidateTrainConfig(cfg));
  RETURN_IF_ERROR(CheckBatch(model, x, u, s));
  std::vector<MechanismDraws> draws;
  for (int l = 0; l < cfg.mc_samples; ++l) {
    draws.push_back(model.DrawMechanism(static_cast<int>(x.rows()), rng));
  }
  const LossGraph g =
      McLossGraph(model, x, u, s, cfg.beta, cfg.vq_lambda, draws);
  RETURN_IF_ERROR(CheckFinite(g.parts, "mc loss"));
  return g.parts;
}

absl::StatusOr<std::vector<LossBreakdown>> Train(EncoderModel& model,
                                                 const TabularDataset& data,
                                                 const TrainConfig& cfg) {
  RETURN_IF_ERROR(ValidateTrainConfig(cfg));
  RETURN_IF_ERROR(CheckBatch(model, data.x, data.u, data.s));
  Rng rng(cfg.seed);
  ad::AdamOptions opts;
  opts.learning_rate = cfg.learning_rate;
  ad::Adam adam(model.Parameters(), opts);
  const int n = data.rows();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<LossBreakdown> history;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    LossBreakdown acc;
    for (int start = 0; start < n; start += cfg.batch_size) {
      const int nb = std::min(cfg.batch_size, n - start);
      Matrix xb(nb, data.x.cols());
      std::vector<int> ub(nb), sb(nb);
      for (int i = 0; i < nb; ++i) {
        const int r = order[start + i];
        xb.row(i) = data.x.row(r);
        ub[i] = data.u[r];
        sb[i] = data.s[r];
      }
      std::vector<MechanismDraws> draws;
      for (int l = 0; l < cfg.mc_samples; ++l) {
        draws.push_back(model.DrawMechanism(nb, rng));
      }
      const LossGraph g =
          McLossGraph(model, xb, ub, sb, cfg.beta, cfg.vq_lambda, draws);
      RETURN_IF_ERROR(
          CheckFinite(g.parts, absl::StrFormat("train epoch %d", epoch + 1)));
      ad::Backward(g.total);
      adam.Step();
      const double w = static_cast<double>(nb) / n;
      acc.recon += w * g.parts.recon;
      acc.utility += w * g.parts.utility;
      acc.vq_codebook += w * g.parts.vq_codebook;
      acc.vq_commit += w * g.parts.vq_commit;
      acc.total += w * g.parts.total;
    }
    history.push_back(acc);
  }
  return history;
}

std::string HistoryCsv(const std::vector<LossBreakdown>& history) {
  std::string out = "epoch,recon,utility,vq_codebook,vq_commit,total\n";
  for (std::size_t e = 0; e < history.size(); ++e) {
    const LossBreakdown& b = history[e];
    out += absl::StrFormat("%d,%.10g,%.10g,%.10g,%.10g,%.10g\n", e + 1,
                           b.recon, b.utility, b.vq_codebook, b.vq_commit,
                           b.total);
  }
  return out;
}

absl::StatusOr<Embedding> EmbedDataset(const EncoderModel& model,
                                       const Matrix& x, Rng& rng) {
  const ModelSpec& spec = model.spec();
  if (x.cols() != spec.layout.width) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "embed: feature width %d does not match model input %d", x.cols(),
        spec.layout.width));
  }
  const int n = static_cast<int>(x.rows());
  Embedding emb;
  emb.z.resize(n, spec.z_dim());
  const bool discrete = spec.mode == EncoderMode::kDiscrete;
  emb.zhat.resize(n, discrete ? spec.d * spec.code_dim : spec.d);
  constexpr int kChunk = 4096;
  for (int start = 0; start < n; start += kChunk) {
    const int nb = std::min(kChunk, n - start);
    const MechanismDraws d = model.DrawMechanism(nb, rng);
    const ForwardPass fp = model.Forward(x.middleRows(start, nb), d);
    emb.z.middleRows(start, nb) = fp.z.value();
    emb.zhat.middleRows(start, nb) = fp.zhat.value();
    if (discrete) {
      emb.indices.insert(emb.indices.end(), fp.noisy_indices.begin(),
                         fp.noisy_indices.end());
    }
  }
  if (discrete) {
    emb.symbols.resize(n);
    for (int i = 0; i < n; ++i) {
      int code = 0;
      for (int j = 0; j < spec.d; ++j) {
        code = code * spec.codebook_size + emb.indices[i * spec.d + j];
      }
      emb.symbols[i] = code;
    }
  }
  return emb;
}

std::vector<int> PredictUtility(const EncoderModel& model, const Matrix& z) {
  const Matrix lp = model.UtilityLogProbs(Tensor::Constant(z)).value();
  std::vector<int> out(lp.rows());
  for (Eigen::Index i = 0; i < lp.rows(); ++i) {
    Eigen::Index k;
    lp.row(i).maxCoeff(&k);
    out[i] = static_cast<int>(k);
  }
  return out;
}

namespace {

constexpr char kCheckpointTag[] = "ldpfair-checkpoint";
constexpr int kCheckpointVersion = 1;

}  // namespace

absl::Status EncoderModel::Save(const std::string& path) const {
  std::ostringstream out;
  const ModelSpec& s = spec_;
  out << kCheckpointTag << ' ' << kCheckpointVersion << '\n'
      << "mode " << EncoderModeName(s.mode) << '\n'
      << "cards " << s.card_u << ' ' << s.card_s << '\n'
      << "dims " << s.d << ' ' << s.codebook_size << ' ' << s.code_dim << ' '
      << s.hidden << '\n'
      << absl::StrFormat("mechanism %.17g %.17g\n", s.t, s.epsilon)
      << "layout " << s.layout.width << ' ' << s.layout.numeric.size();
  for (int c : s.layout.numeric) out << ' ' << c;
  out << ' ' << s.layout.groups.size();
  for (const auto& [a, b] : s.layout.groups) out << ' ' << a << ' ' << b;
  out << '\n';
  encoder_.Write(out, "encoder");
  utility_.Write(out, "utility");
  side_.Write(out, "side");
  if (codebook_.defined()) {
    out << "codebook\n";
    ad::WriteMatrix(out, codebook_.value());
  }
  return WriteFile(path, out.str());
}

absl::StatusOr<EncoderModel> EncoderModel::Load(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  std::istringstream in(text);
  std::string tag, mode;
  int version = 0;
  if (!(in >> tag >> version) || tag != kCheckpointTag) {
    return absl::DataLossError("checkpoint: not an ldpfair checkpoint");
  }
  if (version != kCheckpointVersion) {
    return absl::DataLossError(
        absl::StrFormat("checkpoint: unsupported version %d", version));
  }
  EncoderModel m;
  ModelSpec& s = m.spec_;
  std::string k1, k2, k3, k4, k5;
  std::size_t nn = 0, ng = 0;
  if (!(in >> k1 >> mode >> k2 >> s.card_u >> s.card_s >> k3 >> s.d >>
        s.codebook_size >> s.code_dim >> s.hidden >> k4 >> s.t >> s.epsilon >>
        k5 >> s.layout.width >> nn) ||
      k1 != "mode" || k2 != "cards" || k3 != "dims" || k4 != "mechanism" ||
      k5 != "layout") {
    return absl::DataLossError("checkpoint: bad spec header");
  }
  ASSIGN_OR_RETURN(s.mode, ParseEncoderMode(mode));
  s.layout.numeric.resize(nn);
  for (int& c : s.layout.numeric) in >> c;
  in >> ng;
  s.layout.groups.resize(ng);
  for (auto& [a, b] : s.layout.groups) in >> a >> b;
  if (!in) return absl::DataLossError("checkpoint: bad layout");
  RETURN_IF_ERROR(ValidateModelSpec(s));
  ASSIGN_OR_RETURN(m.encoder_, ad::Mlp::Read(in, "encoder"));
  ASSIGN_OR_RETURN(m.utility_, ad::Mlp::Read(in, "utility"));
  ASSIGN_OR_RETURN(m.side_, ad::Mlp::Read(in, "side"));
  if (s.mode == EncoderMode::kDiscrete) {
    if (!(in >> tag) || tag != "codebook") {
      return absl::DataLossError("checkpoint: missing codebook block");
    }
    ASSIGN_OR_RETURN(Matrix cb, ad::ReadMatrix(in));
    if (cb.rows() != s.codebook_size || cb.cols() != s.code_dim) {
      return absl::DataLossError("checkpoint: codebook shape mismatch");
    }
    m.codebook_ = Tensor::Parameter(std::move(cb));
  }
  if (m.encoder_.input_dim() != s.layout.width ||
      m.utility_.input_dim() != s.z_dim() ||
      m.side_.input_dim() != s.z_dim() + s.card_s) {
    return absl::DataLossError("checkpoint: network shapes do not match spec");
  }
  return m;
}

double VariationalObjective(const JointFull& joint, const DecoderTables& q,
                            double beta) {
  const int nu = joint.card(Axis::kU), ns = joint.card(Axis::kS),
            nx = joint.card(Axis::kX), nz = joint.card(Axis::kZ);
  double total = 0.0;
  for (int u = 0; u < nu; ++u)
    for (int s = 0; s < ns; ++s)
      for (int x = 0; x < nx; ++x)
        for (int z = 0; z < nz; ++z) {
          const double p = joint(u, s, x, z);
          if (p == 0.0) continue;
          total += p * (std::log(q.q_x_zs(z * ns + s, x)) +
                        beta * std::log(q.q_u_z(z, u)));
        }
  return total;
}

DecoderTables TruePosteriors(const JointFull& joint) {
  const int nu = joint.card(Axis::kU), ns = joint.card(Axis::kS),
            nx = joint.card(Axis::kX), nz = joint.card(Axis::kZ);
  DecoderTables t;
  t.q_x_zs = Matrix::Zero(nz * ns, nx);
  t.q_u_z = Matrix::Zero(nz, nu);
  for (int u = 0; u < nu; ++u)
    for (int s = 0; s < ns; ++s)
      for (int x = 0; x < nx; ++x)
        for (int z = 0; z < nz; ++z) {
          const double p = joint(u, s, x, z);
          t.q_x_zs(z * ns + s, x) += p;
          t.q_u_z(z, u) += p;
        }
  auto normalize = [](Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double total = m.row(r).sum();
      if (total > 0.0) {
        m.row(r) /= total;
      } else {
        m.row(r).setConstant(1.0 / m.cols());
      }
    }
  };
  normalize(t.q_x_zs);
  normalize(t.q_u_z);
  return t;
}

namespace {

double SumNegXLogX(const double* p, std::size_t n) {
  double h = 0.0;
  for (std::size_t i = 0; i < n; ++i) h += p[i] > 0.0 ? -p[i] * std::log(p[i]) : 0.0;
  return h;
}

}  // namespace

double TrueObjective(const JointFull& joint, double beta) {
  const Array3 xzs = joint.TripleMarginal(Axis::kX, Axis::kZ, Axis::kS);
  const Matrix zs = joint.PairMarginal(Axis::kZ, Axis::kS);
  const Matrix uz = joint.PairMarginal(Axis::kU, Axis::kZ);
  const Vector z = uz.colwise().sum().transpose();
  const double h_x_given_zs = SumNegXLogX(xzs.values.data(), xzs.values.size()) -
                              SumNegXLogX(zs.data(), zs.size());
  const double h_u_given_z =
      SumNegXLogX(uz.data(), uz.size()) - SumNegXLogX(z.data(), z.size());
  return -h_x_given_zs - beta * h_u_given_z;
}

}  // namespace ldpfair
