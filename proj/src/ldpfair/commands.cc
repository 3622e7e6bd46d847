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

#include "ldpfair/commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/ascii.h"
#include "json.hpp"
#include "ldpfair/ib_solver.h"
#include "ldpfair/info_measures.h"
#include "ldpfair/ldp_mechanisms.h"
#include "ldpfair/parallel.h"
#include "ldpfair/status_macros.h"

namespace ldpfair {
namespace {

using nlohmann::json;

void Log(std::string* log, const std::string& line) {
  if (log != nullptr) *log += line + "\n";
}

std::string SeedList(const RunConfig& cfg) {
  return absl::StrJoin(cfg.GetSeeds(), ",");
}

std::string CsvPreamble(const RunConfig& cfg) {
  return absl::StrFormat("# config_hash=%s seeds=%s\n", cfg.Hash(),
                         SeedList(cfg));
}

json Provenance(const RunConfig& cfg) {
  return json{{"config_hash", cfg.Hash()}, {"seeds", cfg.GetSeeds()}};
}

absl::Status WriteArtifact(const std::string& out_dir, const std::string& name,
                           const std::string& contents) {
  return WriteFile((std::filesystem::path(out_dir) / name).string(), contents);
}

std::uint64_t FirstSeed(const RunConfig& cfg) {
  const auto seeds = cfg.GetSeeds();
  return seeds.empty() ? 0 : seeds.front();
}

SolverConfig SolverConfigFor(const RunConfig& cfg) {
  SolverConfig s;
  s.restarts = cfg.GetInt("restarts");
  s.iterations = cfg.GetInt("iterations");
  s.learning_rate = cfg.GetDouble("solver_lr");
  s.tolerance = cfg.GetDouble("tolerance");
  s.seed = FirstSeed(cfg);
  return s;
}

absl::StatusOr<JointSourceUSX> ConfiguredSource(const RunConfig& cfg) {
  const std::string path = cfg.GetString("source_file");
  if (!path.empty()) {
    ASSIGN_OR_RETURN(std::string text, ReadFile(path));
    return ParseSource(text);
  }
  const auto c = cfg.GetList("source_cards");
  return RandomSource(static_cast<int>(c[0]), static_cast<int>(c[1]),
                      static_cast<int>(c[2]), cfg.GetInt("source_seed"));
}

absl::StatusOr<RandomizedResponse> ConfiguredMechanism(
    const RunConfig& cfg, const JointSourceUSX& src, double epsilon) {
  const int k = cfg.GetInt("rr_k");
  return RandomizedResponse::Create(epsilon, k == 0 ? std::max(2, src.card_x())
                                                    : k,
                                    cfg.GetInt("rr_d"));
}

json PointJson(const FrontierPoint& p) {
  return json{{"beta", p.beta},       {"epsilon", p.epsilon},
              {"gamma", p.gamma_target}, {"Gamma", p.Gamma},
              {"Omega", p.Omega},     {"nu", p.nu},
              {"ixz", p.ixz},         {"objective", p.objective},
              {"converged", p.converged}};
}

// ---- fetch-data ----

absl::Status FetchData(const RunConfig& cfg, const std::string& out_dir,
                       std::string* log) {
  ASSIGN_OR_RETURN(DatasetSplits splits, LoadConfiguredData(cfg));
  json j = Provenance(cfg);
  j["dataset"] = splits.train.name;
  for (const TabularDataset* ds : {&splits.train, &splits.test}) {
    double pu = 0.0, ps = 0.0;
    for (int v : ds->u) pu += v;
    for (int v : ds->s) ps += v;
    const std::string file = ds->name + "_" + ds->split + ".ldpd";
    RETURN_IF_ERROR(SaveDataset(*ds, (std::filesystem::path(out_dir) / file)
                                         .string()));
    j[ds->split] = {{"rows", ds->rows()},
                    {"features", ds->x.cols()},
                    {"attributes", ds->schema.size()},
                    {"p_u1", pu / ds->rows()},
                    {"p_s1", ps / ds->rows()},
                    {"file", file},
                    {"content_hash", DatasetHash(*ds)}};
    Log(log, absl::StrFormat("%s %s: %d rows, P(U=1)=%.4f", ds->name,
                             ds->split, ds->rows(), pu / ds->rows()));
  }
  j["warnings"] = splits.warnings;
  for (const auto& w : splits.warnings) Log(log, "warning: " + w);
  return WriteArtifact(out_dir, "dataset.json", j.dump(2) + "\n");
}

// ---- verify ----

struct CheckOutcome {
  std::string name;
  bool pass = true;
  std::string detail;
};

CheckOutcome VerifyLemmas(const RunConfig& cfg, int jobs) {
  CheckOutcome lemma1{"lemma1_post_processing", true, ""};
  const std::uint64_t seed = FirstSeed(cfg);
  const int n = cfg.GetInt("verify_encoders");
  double worst_ratio = -std::numeric_limits<double>::infinity();
  std::string first_error;
  std::mutex mu;
  for (double eps : cfg.GetList("verify_epsilons")) {
    ParallelFor(n, jobs, [&](std::size_t i) {
      std::seed_seq seq{seed, static_cast<std::uint64_t>(i),
                        static_cast<std::uint64_t>(eps * 1e6)};
      Rng rng(seq);
      const int nx = 2 + static_cast<int>(i % 3);
      const int nz = 2 + static_cast<int>((i / 3) % 3);
            const Channel enc = RandomChannel(nx, nz, rng, i % 2 ? 0.2 : 1.0);
      absl::StatusOr<double> gap = [&]() -> absl::StatusOr<double> {
        ASSIGN_OR_RETURN(RandomizedResponse rr,
                         RandomizedResponse::Create(eps, nz, 1));
        ASSIGN_OR_RETURN(Channel mech, rr.ExactChannel());
        ASSIGN_OR_RETURN(Lemma1Result l1, CheckLemma1(enc, mech, eps));
        return l1.composed.max_log_ratio - eps;
      }();
      std::lock_guard<std::mutex> lock(mu);
      if (!gap.ok()) {
        if (first_error.empty()) first_error = std::string(gap.status().message());
      } else {
        worst_ratio = std::max(worst_ratio, *gap);
      }
    });
  }
  lemma1.pass = first_error.empty() && worst_ratio <= kLdpSlack;
  lemma1.detail = first_error.empty()
                      ? absl::StrFormat("max(log ratio - eps) = %.3g",
                                        worst_ratio)
                      : first_error;
  return lemma1;
}

CheckOutcome VerifyLemma2(const RunConfig& cfg, int jobs) {
  CheckOutcome out{"lemma2_mi_bound", true, ""};
  const std::uint64_t seed = FirstSeed(cfg);
  const int n = cfg.GetInt("verify_encoders");
  double worst = -std::numeric_limits<double>::infinity();
  std::string first_error;
  std::mutex mu;
  for (double eps : cfg.GetList("verify_epsilons")) {
    ParallelFor(n, jobs, [&](std::size_t i) {
      std::seed_seq seq{seed, static_cast<std::uint64_t>(i),
                        static_cast<std::uint64_t>(eps * 1e6),
                        std::uint64_t{2}};
      Rng rng(seq);
      const int nx = 2 + static_cast<int>(i % 3);
      const int nz = 2 + static_cast<int>((i / 3) % 3);
      const JointSourceUSX src = RandomSource(2, 2, nx, seed * 104729 + i);
      const Channel enc = RandomChannel(nx, nz, rng, i % 2 ? 0.2 : 1.0);
      absl::StatusOr<double> gap = [&]() -> absl::StatusOr<double> {
        ASSIGN_OR_RETURN(RandomizedResponse rr,
                         RandomizedResponse::Create(eps, nz, 1));
        ASSIGN_OR_RETURN(Channel mech, rr.ExactChannel());
        ASSIGN_OR_RETURN(Channel total, Compose(enc, mech));
        ASSIGN_OR_RETURN(JointFull joint, InducedJoint(src, total));
        ASSIGN_OR_RETURN(double ixz, MutualInformation(joint.PairMarginal(
                                         Axis::kX, Axis::kZ)));
        return ixz - eps;
      }();
      std::lock_guard<std::mutex> lock(mu);
      if (!gap.ok()) {
        if (first_error.empty()) first_error = std::string(gap.status().message());
      } else {
        worst = std::max(worst, *gap);
      }
    });
  }
  out.pass = first_error.empty() && worst <= kLdpSlack;
  out.detail = first_error.empty()
                   ? absl::StrFormat("max(I(X;Z) - eps) = %.3g", worst)
                   : first_error;
  return out;
}

CheckOutcome VerifyChannelFile(const RunConfig& cfg) {
  CheckOutcome out{"verify_ldp", true, ""};
  const double eps = cfg.GetList("epsilon").front();
  auto text = ReadFile(cfg.GetString("channel_file"));
  auto ch = text.ok() ? ParseChannel(*text) : text.status();
  if (!ch.ok()) {
    out.pass = false;
    out.detail = std::string(ch.status().message());
    return out;
  }
  const LdpVerdict v = VerifyLdp(*ch, eps);
  out.pass = v.pass;
  out.detail = absl::StrFormat("channel %s: max log ratio %g vs epsilon %g",
                               cfg.GetString("channel_file"),
                               v.max_log_ratio, eps);
  return out;
}

CheckOutcome VerifyCorollary1(const RunConfig& cfg, int jobs) {
  CheckOutcome out{"corollary1_zero_budget", true, ""};
  const int n = std::min(10, cfg.GetInt("verify_sources"));
  const SolverConfig base = SolverConfigFor(cfg);
  std::vector<absl::StatusOr<FrontierPoint>> pts(n);
  ParallelFor(n, jobs, [&](std::size_t i) {
    const JointSourceUSX src =
        RandomSource(2, 2, 2 + static_cast<int>(i % 3), base.seed * 31 + i);
    SolverConfig c = base;
    c.beta = 1.0;
    auto mech = DefaultMechanism(src, 0.0);
    pts[i] = mech.ok() ? SolveG(src, *mech, c) : mech.status();
  });
  double worst = 0.0;
  for (const auto& p : pts) {
    if (!p.ok()) {
      out.pass = false;
      out.detail = std::string(p.status().message());
      return out;
    }
    worst = std::max({worst, p->Gamma, p->Omega, p->ixz});
  }
  out.pass = worst <= 1e-12;
  out.detail = absl::StrFormat("max(Gamma, Omega, I(X;Z)) = %.3g", worst);
  return out;
}

CheckOutcome VerifyTheorem1(const RunConfig& cfg, int jobs) {
  CheckOutcome out{"theorem1", true, ""};
  const int n = cfg.GetInt("verify_sources");
  const SolverConfig base = SolverConfigFor(cfg);
  const double eps_choices[] = {0.5, 1.0, 2.0};
  const double beta_choices[] = {0.1, 1.0, 10.0, 0.0};
  std::vector<absl::StatusOr<FrontierPoint>> pts(n);
  ParallelFor(n, jobs, [&](std::size_t i) {
    const JointSourceUSX src = RandomSource(
        2, 2, 2 + static_cast<int>(i % 3), base.seed * 131 + 1000 + i);
    SolverConfig c = base;
    c.beta = beta_choices[i % 4];
    auto mech = DefaultMechanism(src, eps_choices[i % 3]);
    pts[i] = mech.ok() ? SolveG(src, *mech, c) : mech.status();
  });
  int failed = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!pts[i].ok()) {
      out.pass = false;
      out.detail = std::string(pts[i].status().message());
      return out;
    }
    const Theorem1Report r = CheckTheorem1(*pts[i], pts[i]->Gamma);
    if (!r.pass()) {
      ++failed;
      if (out.detail.empty()) {
        out.detail = absl::StrFormat("run %d: %s", i, r.Describe());
      }
    }
  }
  out.pass = failed == 0;
  if (out.pass) out.detail = absl::StrFormat("%d runs pass", n);
  return out;
}

CheckOutcome VerifyCorollary2(const RunConfig& cfg, int jobs) {
  CheckOutcome out{"corollary2_oracle_gap", true, ""};
  const double gamma = cfg.GetDouble("corollary2_gamma");
  auto src_or = ConfiguredSource(cfg);
  if (!src_or.ok()) {
    out.pass = false;
    out.detail = std::string(src_or.status().message());
    return out;
  }
  auto r = CheckCorollary2(*src_or, gamma, cfg.GetInt("oracle_budget"),
                           SolverConfigFor(cfg), *ParseGrid("logspace(-3,3,7)"),
                           jobs);
  if (!r.ok()) {
    out.pass = false;
    out.detail = std::string(r.status().message());
    return out;
  }
  out.pass = r->gap <= 0.02;
  out.detail = absl::StrFormat(
      "gamma %g: solver leakage %.6g, oracle %.6g, gap %.3g", gamma,
      r->solver_leakage, r->oracle_leakage, r->gap);
  return out;
}

absl::Status Verify(const RunConfig& cfg, const std::string& out_dir, int jobs,
                    std::string* log) {
  std::vector<CheckOutcome> checks;
  checks.push_back(VerifyLemmas(cfg, jobs));
  checks.push_back(VerifyLemma2(cfg, jobs));
  if (!cfg.GetString("channel_file").empty()) {
    checks.push_back(VerifyChannelFile(cfg));
  }
  checks.push_back(VerifyCorollary1(cfg, jobs));
  checks.push_back(VerifyTheorem1(cfg, jobs));
  checks.push_back(VerifyCorollary2(cfg, jobs));
  json j = Provenance(cfg);
  json arr = json::array();
  std::vector<std::string> failed;
  for (const CheckOutcome& c : checks) {
    arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    Log(log, absl::StrFormat("%-24s %s  %s", c.name, c.pass ? "PASS" : "FAIL",
                             c.detail));
    if (!c.pass) failed.push_back(c.name);
  }
  j["checks"] = arr;
  j["all_pass"] = failed.empty();
  RETURN_IF_ERROR(WriteArtifact(out_dir, "verify.json", j.dump(2) + "\n"));
  if (!failed.empty()) {
    return absl::AbortedError("failed checks: " +
                              absl::StrJoin(failed, ", "));
  }
  return absl::OkStatus();
}

// ---- solve / frontier ----

absl::Status Solve(const RunConfig& cfg, const std::string& out_dir,
                   std::string* log) {
  ASSIGN_OR_RETURN(JointSourceUSX src, ConfiguredSource(cfg));
  ASSIGN_OR_RETURN(RandomizedResponse mech,
                   ConfiguredMechanism(cfg, src, cfg.GetList("epsilon")[0]));
  SolverConfig sc = SolverConfigFor(cfg);
  sc.beta = cfg.GetList("beta")[0];
  ASSIGN_OR_RETURN(FrontierPoint pt, SolveG(src, mech, sc));
  pt.gamma_target = pt.Gamma;
  json j = Provenance(cfg);
  j["point"] = PointJson(pt);
  j["theorem1"] = CheckTheorem1(pt, pt.Gamma).Describe();
  RETURN_IF_ERROR(WriteArtifact(out_dir, "solve.json", j.dump(2) + "\n"));
  RETURN_IF_ERROR(
      WriteArtifact(out_dir, "encoder.channel", FormatChannel(pt.encoder)));
  Log(log, absl::StrFormat(
               "beta=%g eps=%g Gamma=%.6f Omega=%.6f nu=%.6f I(X;Z)=%.6f",
               pt.beta, pt.epsilon, pt.Gamma, pt.Omega, pt.nu, pt.ixz));
  return absl::OkStatus();
}

absl::Status Frontier(const RunConfig& cfg, const std::string& out_dir,
                      int jobs, std::string* log) {
  ASSIGN_OR_RETURN(JointSourceUSX src, ConfiguredSource(cfg));
  std::string csv = CsvPreamble(cfg);
  csv += "beta,epsilon,gamma,Gamma,Omega,nu,ixz,converged\n";
  std::vector<double> betas = cfg.GetList("beta");
  std::sort(betas.begin(), betas.end());
  int failures = 0;
  for (double eps : cfg.GetList("epsilon")) {
    ASSIGN_OR_RETURN(RandomizedResponse mech,
                     ConfiguredMechanism(cfg, src, eps));
    const auto pts = TraceFrontier(src, mech, betas, SolverConfigFor(cfg), jobs);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!pts[i].ok()) {
        ++failures;
        Log(log, absl::StrFormat("beta=%g eps=%g failed: %s", betas[i], eps,
                                 pts[i].status().message()));
        csv += absl::StrFormat("%.10g,%.10g,nan,nan,nan,nan,nan,0\n", betas[i],
                               eps);
        continue;
      }
      const FrontierPoint& p = *pts[i];
      csv += absl::StrFormat("%.10g,%.10g,%.12g,%.12g,%.12g,%.12g,%.12g,%d\n",
                             p.beta, p.epsilon, p.Gamma, p.Gamma, p.Omega,
                             p.nu, p.ixz, p.converged ? 1 : 0);
    }
  }
  RETURN_IF_ERROR(WriteArtifact(out_dir, "frontier.csv", csv));
  Log(log, absl::StrFormat("frontier: %d points failed", failures));
  return absl::OkStatus();
}

// ---- train / evaluate / sweep / report ----

std::string CheckpointPath(const RunConfig& cfg, const std::string& out_dir) {
  const std::string c = cfg.GetString("checkpoint");
  return c.empty() ? (std::filesystem::path(out_dir) / "model.ckpt").string()
                   : c;
}

absl::Status TrainCmd(const RunConfig& cfg, const std::string& out_dir,
                      std::string* log) {
  ASSIGN_OR_RETURN(DatasetSplits data, LoadConfiguredData(cfg));
  ASSIGN_OR_RETURN(EncoderMode mode, ParseEncoderMode(cfg.GetString("mode")));
  const double eps = cfg.GetList("epsilon")[0];
  const std::uint64_t seed = FirstSeed(cfg);
  ASSIGN_OR_RETURN(EncoderModel model,
                   EncoderModel::Create(
                       ModelSpecFor(cfg, data.train, mode, eps), seed));
  const TrainConfig tc = TrainConfigFor(cfg, cfg.GetList("beta")[0], seed);
  ASSIGN_OR_RETURN(auto history, Train(model, data.train, tc));
  RETURN_IF_ERROR(model.Save(CheckpointPath(cfg, out_dir)));
  RETURN_IF_ERROR(WriteArtifact(out_dir, "history.csv",
                                CsvPreamble(cfg) + HistoryCsv(history)));
  if (!history.empty()) {
    Log(log, absl::StrFormat("trained %d epochs, final total loss %.6f",
                             history.size(), history.back().total));
  }
  return absl::OkStatus();
}

absl::Status EvaluateCmd(const RunConfig& cfg, const std::string& out_dir,
                         std::string* log) {
  const std::string ckpt = CheckpointPath(cfg, out_dir);
  if (!std::filesystem::exists(ckpt)) {
    return absl::FailedPreconditionError(
        "evaluate: no checkpoint at " + ckpt + "; run train first");
  }
  ASSIGN_OR_RETURN(EncoderModel model, EncoderModel::Load(ckpt));
  ASSIGN_OR_RETURN(DatasetSplits data, LoadConfiguredData(cfg));
  std::vector<EvalReport> runs;
  for (std::uint64_t seed : cfg.GetSeeds()) {
    ASSIGN_OR_RETURN(EvalReport r, EvaluateModel(model, data.train, data.test,
                                                 seed, EvalOptionsFor(cfg)));
    runs.push_back(r);
  }
  const AggregateReport agg = Aggregate(std::move(runs));
  RETURN_IF_ERROR(
      WriteArtifact(out_dir, "report.json", ReportJson(agg, cfg.Hash())));
  Log(log, absl::StrFormat("accuracy %.4f delta_dp %.4f delta_eo %.4f "
                           "leakage %.4f sensitive_acc %.4f",
                           agg.accuracy.mean, agg.delta_dp.mean,
                           agg.delta_eo.mean, agg.leakage_isz.mean,
                           agg.sensitive_accuracy.mean));
  return absl::OkStatus();
}

struct SweepCell {
  EncoderMode mode;
  double epsilon;
  double beta;
  std::uint64_t seed;
};

absl::Status Sweep(const RunConfig& cfg, const std::string& out_dir, int jobs,
                   std::string* log) {
  ASSIGN_OR_RETURN(DatasetSplits data, LoadConfiguredData(cfg));
  std::vector<SweepCell> cells;
  for (absl::string_view m : absl::StrSplit(cfg.GetString("modes"), ',')) {
    ASSIGN_OR_RETURN(EncoderMode mode,
                     ParseEncoderMode(std::string(absl::StripAsciiWhitespace(m))));
    for (double eps : cfg.GetList("epsilon"))
      for (double beta : cfg.GetList("beta"))
        for (std::uint64_t seed : cfg.GetSeeds())
          cells.push_back({mode, eps, beta, seed});
  }
  std::vector<absl::StatusOr<EvalReport>> results(cells.size());
  ParallelFor(cells.size(), jobs, [&](std::size_t i) {
    const SweepCell& c = cells[i];
    results[i] = [&]() -> absl::StatusOr<EvalReport> {
      ASSIGN_OR_RETURN(EncoderModel model,
                       EncoderModel::Create(
                           ModelSpecFor(cfg, data.train, c.mode, c.epsilon),
                           c.seed));
      RETURN_IF_ERROR(
          Train(model, data.train, TrainConfigFor(cfg, c.beta, c.seed))
              .status());
      return EvaluateModel(model, data.train, data.test, c.seed,
                           EvalOptionsFor(cfg));
    }();
  });
  std::string csv = CsvPreamble(cfg);
  csv += "beta,epsilon,mode,accuracy,delta_dp,delta_eo,leakage_nats,"
         "sensitive_acc,seed\n";
  int failures = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const SweepCell& c = cells[i];
    const std::string mode = EncoderModeName(c.mode);
    if (!results[i].ok()) {
      ++failures;
      Log(log, absl::StrFormat("cell mode=%s eps=%g beta=%g seed=%d failed: %s",
                               mode, c.epsilon, c.beta, c.seed,
                               results[i].status().message()));
      csv += absl::StrFormat("%.10g,%.10g,%s,nan,nan,nan,nan,nan,%d\n", c.beta,
                             c.epsilon, mode, c.seed);
      continue;
    }
    const EvalReport& r = *results[i];
    csv += absl::StrFormat("%.10g,%.10g,%s,%.10g,%.10g,%.10g,%.10g,%.10g,%d\n",
                           c.beta, c.epsilon, mode, r.accuracy, r.delta_dp,
                           r.delta_eo, r.leakage_isz, r.sensitive_accuracy,
                           c.seed);
  }
  RETURN_IF_ERROR(WriteArtifact(out_dir, "sweep.csv", csv));
  Log(log, absl::StrFormat("sweep: %d cells, %d failed", cells.size(),
                           failures));
  return absl::OkStatus();
}

absl::Status Report(const RunConfig& cfg, const std::string& out_dir,
                    std::string* log) {
  const std::string path =
      (std::filesystem::path(out_dir) / "sweep.csv").string();
  auto text = ReadFile(path);
  if (!text.ok()) {
    return absl::FailedPreconditionError("report: no sweep.csv in " + out_dir +
                                         "; run sweep first");
  }
  // (mode, epsilon, beta) -> per-field values
  std::map<std::tuple<std::string, double, double>,
           std::vector<std::vector<double>>>
      groups;
  std::string source_hash;
  bool header_seen = false;
  for (absl::string_view line : absl::StrSplit(*text, '\n')) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      source_hash = std::string(line.substr(2));
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> f = absl::StrSplit(line, ',');
    if (f.size() != 9) {
      return absl::DataLossError("report: malformed sweep row: " +
                                 std::string(line));
    }
    double beta, eps;
    if (!absl::SimpleAtod(f[0], &beta) || !absl::SimpleAtod(f[1], &eps)) {
      return absl::DataLossError("report: malformed sweep row");
    }
    std::vector<double> vals(5);
    bool ok = true;
    for (int k = 0; k < 5; ++k) {
      ok = ok && absl::SimpleAtod(f[3 + k], &vals[k]) && std::isfinite(vals[k]);
    }
    if (!ok) continue;
    groups[{f[2], eps, beta}].push_back(vals);
  }
  std::string csv = CsvPreamble(cfg);
  if (!source_hash.empty()) csv += "# sweep " + source_hash + "\n";
  csv += "mode,epsilon,beta,runs,accuracy,delta_dp,delta_eo,leakage_nats,"
         "sensitive_acc\n";
  for (const auto& [key, rows] : groups) {
    std::vector<double> med(5);
    for (int k = 0; k < 5; ++k) {
      std::vector<double> v;
      for (const auto& r : rows) v.push_back(r[k]);
      std::sort(v.begin(), v.end());
      const std::size_t m = v.size() / 2;
      med[k] = v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
    }
    csv += absl::StrFormat("%s,%.10g,%.10g,%d,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                           std::get<0>(key), std::get<1>(key),
                           std::get<2>(key), rows.size(), med[0], med[1],
                           med[2], med[3], med[4]);
  }
  RETURN_IF_ERROR(WriteArtifact(out_dir, "tradeoff.csv", csv));
  Log(log, absl::StrFormat("report: %d (mode, epsilon, beta) groups",
                           groups.size()));
  return absl::OkStatus();
}

}  // namespace

std::vector<std::string> CommandNames() {
  return {"fetch-data", "verify",   "solve", "frontier",
          "train",      "evaluate", "sweep", "report"};
}

absl::StatusOr<DatasetSplits> LoadConfiguredData(const RunConfig& cfg) {
  const std::string ds = cfg.GetString("dataset");
  if (ds == "adult") {
    ASSIGN_OR_RETURN(
        AdultRaw raw,
        FetchUciAdult(ResolveCacheDir(cfg.GetString("cache_dir")),
                      cfg.GetString("adult_url")));
    return PreprocessAdult(raw);
  }
  if (ds == "compas") {
    return LoadCompas(cfg.GetString("compas_csv"), FirstSeed(cfg));
  }
  ASSIGN_OR_RETURN(SyntheticData syn, GenerateSynthetic(DefaultSyntheticSpec(
                                          cfg.GetInt("source_seed"))));
  return std::move(syn.splits);
}

ModelSpec ModelSpecFor(const RunConfig& cfg, const TabularDataset& train,
                       EncoderMode mode, double epsilon) {
  ModelSpec s;
  s.mode = mode;
  s.layout = train.Layout();
  s.card_u = train.card_u;
  s.card_s = train.card_s;
  s.d = cfg.GetInt("d");
  s.codebook_size = cfg.GetInt("K");
  s.code_dim = cfg.GetInt("D");
  s.t = cfg.GetDouble("t");
  s.epsilon = epsilon;
  s.hidden = cfg.GetInt("hidden");
  return s;
}

TrainConfig TrainConfigFor(const RunConfig& cfg, double beta,
                           std::uint64_t seed) {
  TrainConfig t;
  t.beta = beta;
  t.mc_samples = cfg.GetInt("mc_samples");
  t.epochs = cfg.GetInt("epochs");
  t.batch_size = cfg.GetInt("batch");
  t.learning_rate = cfg.GetDouble("lr");
  t.vq_lambda = cfg.GetDouble("vq_lambda");
  t.seed = seed;
  return t;
}

EvalOptions EvalOptionsFor(const RunConfig& cfg) {
  EvalOptions o;
  o.mine.iterations = cfg.GetInt("mine_iterations");
  o.mine.batch_size = cfg.GetInt("mine_batch");
  o.mine.learning_rate = cfg.GetDouble("mine_lr");
  o.mine.averaging_window = std::min(o.mine.averaging_window,
                                     o.mine.iterations);
  o.attacker.epochs = cfg.GetInt("attacker_epochs");
  return o;
}

absl::Status RunCommand(const std::string& command, const RunConfig& cfg,
                        const std::string& out_dir, int jobs,
                        std::string* log) {
  const auto names = CommandNames();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    return absl::InvalidArgumentError(
        "unknown command '" + command + "'; expected one of " +
        absl::StrJoin(names, ", "));
  }
  if (jobs < 1) return absl::InvalidArgumentError("jobs must be >= 1");
  RETURN_IF_ERROR(cfg.Validate());
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    return absl::InternalError("cannot create output directory " + out_dir +
                               ": " + ec.message());
  }
  try {
    if (command == "fetch-data") return FetchData(cfg, out_dir, log);
    if (command == "verify") return Verify(cfg, out_dir, jobs, log);
    if (command == "solve") return Solve(cfg, out_dir, log);
    if (command == "frontier") return Frontier(cfg, out_dir, jobs, log);
    if (command == "train") return TrainCmd(cfg, out_dir, log);
    if (command == "evaluate") return EvaluateCmd(cfg, out_dir, log);
    if (command == "sweep") return Sweep(cfg, out_dir, jobs, log);
    return Report(cfg, out_dir, log);
  } catch (const std::exception& e) {
    return absl::InternalError(std::string(command) + ": " + e.what());
  }
}

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return 0;
    case absl::StatusCode::kInvalidArgument:
      return 2;
    case absl::StatusCode::kAborted:
      return 3;
    default:
      return 4;
  }
}

}  // namespace ldpfair
