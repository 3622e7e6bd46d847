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

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"
#include "ldpfair/autodiff.h"
#include "ldpfair/info_measures.h"
#include "ldpfair/parallel.h"
#include "ldpfair/status_macros.h"

namespace ldpfair {
namespace {

using ad::Tensor;

// Constant pieces of the objective for one (source, mechanism) pair.
struct Problem {
  Tensor dx;    // diag p(x)
  Tensor psx;   // |S| x |X| joint
  Tensor pux;   // |U| x |X| joint
  Tensor mech;  // |Zhat| x |Z|
  double hx = 0.0, hs = 0.0, hu = 0.0;
};

double PlainEntropy(const Vector& p) {
  double h = 0.0;
  for (double v : p) h += v > 0.0 ? -v * std::log(v) : 0.0;
  return h;
}

Problem MakeProblem(const JointSourceUSX& src, const Channel& mech) {
  Problem p;
  const Vector px = src.MarginalX();
  p.dx = Tensor::Constant(px.asDiagonal().toDenseMatrix());
  p.psx = Tensor::Constant(src.JointSX());
  p.pux = Tensor::Constant(src.JointUX());
  p.mech = Tensor::Constant(mech.matrix());
  p.hx = PlainEntropy(px);
  p.hs = PlainEntropy(src.MarginalS());
  p.hu = PlainEntropy(src.MarginalU());
  return p;
}

Tensor Objective(const Problem& p, const Tensor& logits, double beta) {
  using namespace ad;
  const Tensor channel = MatMul(SoftmaxRows(logits), p.mech);
  const Tensor h_zs = Sub(Sum(NegXLogX(MatMul(p.psx, channel))),
                          Tensor::Scalar(p.hs));
  const Tensor h_zx = Sub(Sum(NegXLogX(MatMul(p.dx, channel))),
                          Tensor::Scalar(p.hx));
  const Tensor puz = MatMul(p.pux, channel);
  const Tensor i_uz =
      Add(Sub(Sum(NegXLogX(ColSums(puz))), Sum(NegXLogX(puz))),
          Tensor::Scalar(p.hu));
  return Add(Sub(h_zs, h_zx), Scale(i_uz, beta));
}

absl::Status CheckMechanismShape(const JointSourceUSX& src, const Channel& mech,
                                 const Matrix& logits) {
  if (logits.rows() != src.card_x() || logits.cols() != mech.in_card()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "solver: logits are %dx%d, expected %dx%d", logits.rows(),
        logits.cols(), src.card_x(), mech.in_card()));
  }
  return absl::OkStatus();
}

Channel ArgmaxEncoder(const Matrix& logits) {
  Matrix m = Matrix::Zero(logits.rows(), logits.cols());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    Eigen::Index best;
    logits.row(r).maxCoeff(&best);
    m(r, best) = 1.0;
  }
  return *Channel::Create(std::move(m));
}

Channel SoftmaxEncoder(const Matrix& logits) {
  Matrix m = logits;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double mx = m.row(r).maxCoeff();
    m.row(r) = (m.row(r).array() - mx).exp().matrix();
    m.row(r) /= m.row(r).sum();
  }
  return *Channel::Create(std::move(m));
}

}  // namespace

absl::Status ValidateSolverConfig(const SolverConfig& cfg) {
  if (!(cfg.beta >= 0.0) || !std::isfinite(cfg.beta)) {
    return absl::InvalidArgumentError("solver: beta must be >= 0");
  }
  if (cfg.restarts < 1 || cfg.iterations < 1) {
    return absl::InvalidArgumentError(
        "solver: restarts and iterations must be positive");
  }
  if (!(cfg.learning_rate > 0.0) || !(cfg.tolerance > 0.0)) {
    return absl::InvalidArgumentError(
        "solver: learning rate and tolerance must be positive");
  }
  return absl::OkStatus();
}

absl::StatusOr<RandomizedResponse> DefaultMechanism(const JointSourceUSX& src,
                                                    double epsilon) {
  return RandomizedResponse::Create(epsilon, std::max(2, src.card_x()), 1);
}

absl::StatusOr<ObjectiveGradient> EvaluateObjective(const JointSourceUSX& src,
                                                    const Channel& mech,
                                                    const Matrix& logits,
                                                    double beta) {
  RETURN_IF_ERROR(CheckMechanismShape(src, mech, logits));
  const Problem p = MakeProblem(src, mech);
  Tensor param = Tensor::Parameter(logits);
  const Tensor obj = Objective(p, param, beta);
  ad::Backward(obj);
  return ObjectiveGradient{obj.item(), param.grad()};
}

absl::StatusOr<FrontierPoint> EvaluateEncoder(const JointSourceUSX& src,
                                              const Channel& enc,
                                              const Channel& mech,
                                              double beta) {
  ASSIGN_OR_RETURN(Channel total, Compose(enc, mech));
  ASSIGN_OR_RETURN(JointFull joint, InducedJoint(src, total));
  FrontierPoint pt;
  pt.beta = beta;
  ASSIGN_OR_RETURN(pt.Gamma,
                   MutualInformation(joint.PairMarginal(Axis::kU, Axis::kZ)));
  ASSIGN_OR_RETURN(pt.Omega,
                   MutualInformation(joint.PairMarginal(Axis::kS, Axis::kZ)));
  ASSIGN_OR_RETURN(pt.ixz,
                   MutualInformation(joint.PairMarginal(Axis::kX, Axis::kZ)));
  ASSIGN_OR_RETURN(pt.nu, ConditionalMutualInformation(joint.TripleMarginal(
                              Axis::kX, Axis::kZ, Axis::kS)));
  pt.objective = pt.nu + beta * pt.Gamma;
  pt.encoder = enc;
  return pt;
}

absl::StatusOr<FrontierPoint> SolveG(const JointSourceUSX& src,
                                     const RandomizedResponse& mech,
                                     const SolverConfig& cfg) {
  RETURN_IF_ERROR(ValidateSolverConfig(cfg));
  ASSIGN_OR_RETURN(Channel mech_ch, mech.ExactChannel());
  const Problem p = MakeProblem(src, mech_ch);
  const int nx = src.card_x(), nzh = mech_ch.in_card();

  double best_value = -std::numeric_limits<double>::infinity();
  Channel best_enc = Channel::Uniform(nx, nzh);
  bool best_converged = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(r)};
    Rng rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix logits(nx, nzh);
    for (Eigen::Index i = 0; i < logits.size(); ++i) logits(i) = normal(rng);

    ad::AdamOptions opts;
    opts.learning_rate = cfg.learning_rate;
    ad::AdamState state;
    double prev = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
    for (int it = 0; it < cfg.iterations; ++it) {
      Tensor param = Tensor::Parameter(logits);
      const Tensor obj = Objective(p, param, cfg.beta);
      const double value = obj.item();
      if (!std::isfinite(value)) {
        return absl::InternalError(absl::StrFormat(
            "solver: non-finite objective at restart %d iteration %d; "
            "lower the learning rate",
            r, it));
      }
      if (std::abs(value - prev) < cfg.tolerance) {
        converged = true;
        break;
      }
      prev = value;
      ad::Backward(ad::Neg(obj));
      ad::AdamStep({&logits}, {param.grad()}, state, opts);
    }
    // Keep the better of the soft encoder and its argmax vertex.
    for (const Channel& cand : {SoftmaxEncoder(logits), ArgmaxEncoder(logits)}) {
      ASSIGN_OR_RETURN(FrontierPoint pt,
                       EvaluateEncoder(src, cand, mech_ch, cfg.beta));
      if (pt.objective > best_value) {
        best_value = pt.objective;
        best_enc = cand;
        best_converged = converged;
      }
    }
  }
  ASSIGN_OR_RETURN(FrontierPoint pt,
                   EvaluateEncoder(src, best_enc, mech_ch, cfg.beta));
  pt.epsilon = mech.epsilon();
  pt.converged = best_converged;
  return pt;
}

namespace {

// Small dense helper for the oracle's inner loop.
struct OracleEval {
  int na = 0, nx = 0, nz = 0;
  std::vector<double> pa;  // na x nx joint
  std::vector<double> joint, row, col;

  OracleEval(const Matrix& pax) : na(pax.rows()), nx(pax.cols()) {
    pa.resize(na * nx);
    for (int a = 0; a < na; ++a)
      for (int x = 0; x < nx; ++x) pa[a * nx + x] = pax(a, x);
  }

  // I(A; Z) for channel `m` (nx x nz, row-major).
  double Mi(const std::vector<double>& m, int z_card) {
    nz = z_card;
    joint.assign(na * nz, 0.0);
    row.assign(na, 0.0);
    col.assign(nz, 0.0);
    for (int a = 0; a < na; ++a)
      for (int x = 0; x < nx; ++x) {
        const double w = pa[a * nx + x];
        if (w == 0.0) continue;
        for (int z = 0; z < nz; ++z) joint[a * nz + z] += w * m[x * nz + z];
      }
    for (int a = 0; a < na; ++a)
      for (int z = 0; z < nz; ++z) {
        row[a] += joint[a * nz + z];
        col[z] += joint[a * nz + z];
      }
    double mi = 0.0;
    for (int a = 0; a < na; ++a)
      for (int z = 0; z < nz; ++z) {
        const double p = joint[a * nz + z];
        if (p > 0.0) mi += p * std::log(p / (row[a] * col[z]));
      }
    return std::max(mi, 0.0);
  }
};

struct OracleBest {
  double leakage = std::numeric_limits<double>::infinity();
  double utility = 0.0;
  long index = -1;
  std::vector<double> channel;
  double max_utility = 0.0;
};

class OracleWorker {
 public:
  OracleWorker(const JointSourceUSX& src, double gamma)
      : u_(src.JointUX()), s_(src.JointSX()), px_(src.MarginalX()),
        gamma_(gamma), nx_(src.card_x()) {}

  // Shrinks `r` toward its output marginal until I(U;Z) = gamma and records
  // the leakage there.
  void Consider(const std::vector<double>& r, long index, OracleBest& best) {
    const int nz = nx_;
    const double full = u_.Mi(r, nz);
    best.max_utility = std::max(best.max_utility, full);
    if (full < gamma_ - kOracleFeasibilitySlack) return;
    std::vector<double> q(nz, 0.0);
    for (int x = 0; x < nx_; ++x)
      for (int z = 0; z < nz; ++z) q[z] += px_(x) * r[x * nz + z];
    auto mix = [&](double lambda) {
      for (int x = 0; x < nx_; ++x)
        for (int z = 0; z < nz; ++z)
          mixed_[x * nz + z] = lambda * r[x * nz + z] + (1.0 - lambda) * q[z];
    };
    mixed_.resize(r.size());
    double lambda = 1.0;
    if (gamma_ <= 0.0) {
      lambda = 0.0;
    } else if (full > gamma_) {
      // I(U;Z) is nondecreasing in lambda.
      double lo = 0.0, hi = 1.0;
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        mix(mid);
        (u_.Mi(mixed_, nz) >= gamma_ ? hi : lo) = mid;
      }
      lambda = hi;
    }
    mix(lambda);
    const double leak = s_.Mi(mixed_, nz);
    if (leak < best.leakage || (leak == best.leakage && index < best.index)) {
      best.leakage = leak;
      best.utility = u_.Mi(mixed_, nz);
      best.index = index;
      best.channel = mixed_;
    }
  }

 private:
  OracleEval u_, s_;
  Vector px_;
  double gamma_;
  int nx_;
  std::vector<double> mixed_;
};

void Merge(OracleBest& into, const OracleBest& from) {
  into.max_utility = std::max(into.max_utility, from.max_utility);
  if (from.index < 0) return;
  if (into.index < 0 || from.leakage < into.leakage ||
      (from.leakage == into.leakage && from.index < into.index)) {
    const double mu = into.max_utility;
    into = from;
    into.max_utility = mu;
  }
}

constexpr long kOracleBlock = 4096;
constexpr double kOracleAlphas[] = {0.05, 0.2, 1.0, 5.0};

}  // namespace

absl::StatusOr<BruteforceResult> SolveGBruteforce(const JointSourceUSX& src,
                                                  double gamma, long budget,
                                                  std::uint64_t seed,
                                                  int jobs) {
  const int nx = src.card_x();
  if (nx > kOracleMaxCard) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "bruteforce: |X| = %d exceeds oracle limit %d", nx, kOracleMaxCard));
  }
  if (budget < 0 || !std::isfinite(gamma) || gamma < 0) {
    return absl::InvalidArgumentError("bruteforce: bad budget or gamma");
  }
  const int nz = nx;

  // Deterministic encoders, indexed before the random candidates.
  OracleBest best;
  long n_det = 1;
  for (int i = 0; i < nx; ++i) n_det *= nz;
  {
    OracleWorker worker(src, gamma);
    std::vector<double> r(nx * nz);
    for (long code = 0; code < n_det; ++code) {
      std::fill(r.begin(), r.end(), 0.0);
      long c = code;
      for (int x = 0; x < nx; ++x, c /= nz) r[x * nz + c % nz] = 1.0;
      worker.Consider(r, code, best);
    }
  }

  const long blocks = (budget + kOracleBlock - 1) / kOracleBlock;
  std::vector<OracleBest> block_best(blocks);
  ParallelFor(blocks, jobs, [&](std::size_t b) {
    OracleWorker worker(src, gamma);
    std::seed_seq seq{seed, static_cast<std::uint64_t>(b)};
    Rng rng(seq);
    const long begin = static_cast<long>(b) * kOracleBlock;
    const long end = std::min(budget, begin + kOracleBlock);
    std::vector<double> r(nx * nz);
    for (long i = begin; i < end; ++i) {
      const double alpha = kOracleAlphas[i % 4];
      const Channel ch = RandomChannel(nx, nz, rng, alpha);
      for (int x = 0; x < nx; ++x)
        for (int z = 0; z < nz; ++z) r[x * nz + z] = ch(x, z);
      worker.Consider(r, n_det + i, block_best[b]);
    }
  });
  for (const OracleBest& b : block_best) Merge(best, b);

  if (best.index < 0) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "bruteforce: infeasible gamma %g (max achievable I(U;Z) = %g)", gamma,
        best.max_utility));
  }
  ASSIGN_OR_RETURN(Channel enc, Channel::FromRowMajor(nx, nz, best.channel));
  BruteforceResult out;
  out.min_leakage = best.leakage;
  out.utility = best.utility;
  out.encoder = std::move(enc);
  out.max_utility = best.max_utility;
  out.candidates = n_det + budget;
  return out;
}

std::vector<absl::StatusOr<FrontierPoint>> TraceFrontier(
    const JointSourceUSX& src, const RandomizedResponse& mech,
    const std::vector<double>& betas, const SolverConfig& cfg, int jobs) {
  std::vector<absl::StatusOr<FrontierPoint>> out(betas.size());
  ParallelFor(betas.size(), jobs, [&](std::size_t i) {
    SolverConfig c = cfg;
    c.beta = betas[i];
    out[i] = SolveG(src, mech, c);
  });
  return out;
}

std::string Theorem1Report::Describe() const {
  auto v = [](bool b) { return b ? "pass" : "FAIL"; };
  return absl::StrFormat("utility_bounds=%s leakage_bound=%s lemma2_chain=%s",
                         v(utility_bounds), v(leakage_bound), v(lemma2_chain));
}

Theorem1Report CheckTheorem1(const FrontierPoint& pt, double gamma) {
  const double tol = kTheoremTolerance, eps = pt.epsilon;
  Theorem1Report r;
  r.utility_bounds = gamma - tol <= pt.Gamma && pt.Gamma <= eps + tol;
  r.leakage_bound = pt.Omega <= eps - pt.nu + tol;
  r.lemma2_chain = pt.Omega <= pt.ixz + tol && pt.ixz <= eps + tol;
  return r;
}

absl::StatusOr<Corollary2Result> CheckCorollary2(
    const JointSourceUSX& src, double gamma, long budget,
    const SolverConfig& cfg, const std::vector<double>& betas, int jobs) {
  if (!(gamma >= 0.0)) {
    return absl::InvalidArgumentError("corollary2: gamma must be >= 0");
  }
  if (betas.empty()) {
    return absl::InvalidArgumentError("corollary2: empty beta grid");
  }
  Corollary2Result res;
  res.epsilon = gamma * (1.0 + kCorollary2Slack);
  ASSIGN_OR_RETURN(RandomizedResponse mech, DefaultMechanism(src, res.epsilon));
  const auto points = TraceFrontier(src, mech, betas, cfg, jobs);
  double least = std::numeric_limits<double>::infinity();
  for (const auto& pt : points) {
    if (!pt.ok()) return pt.status();
    res.max_solver_gamma = std::max(res.max_solver_gamma, pt->Gamma);
    if (pt->Gamma >= gamma - kOracleFeasibilitySlack) {
      least = std::min(least, pt->Omega);
    }
  }
  if (!std::isfinite(least)) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "corollary2: no solver point reaches Gamma >= %g at epsilon = %g "
        "(largest Gamma %g); I(U;Z) <= I(X;Z) < epsilon for every RR encoder",
        gamma, res.epsilon, res.max_solver_gamma));
  }
  ASSIGN_OR_RETURN(BruteforceResult oracle,
                   SolveGBruteforce(src, gamma, budget, cfg.seed, jobs));
  res.solver_leakage = least;
  res.oracle_leakage = oracle.min_leakage;
  res.gap = least - oracle.min_leakage;
  return res;
}

}  // namespace ldpfair
