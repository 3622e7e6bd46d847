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

// Exact solver for the fair-representation objective on finite alphabets:
// maximize I(X;Z|S) + beta * I(U;Z) over softmax encoders followed by a fixed
// randomized-response channel, plus a brute-force oracle for the minimal
// leakage at a utility floor and the theory checks built on both.

#ifndef LDPFAIR_IB_SOLVER_H_
#define LDPFAIR_IB_SOLVER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ldpfair/discrete_source.h"
#include "ldpfair/ldp_mechanisms.h"

namespace ldpfair {

struct SolverConfig {
  double beta = 1.0;
  int restarts = 8;
  int iterations = 2000;
  double learning_rate = 0.05;
  // Stop a restart once the objective moves less than this in one step.
  double tolerance = 1e-7;
  std::uint64_t seed = 0;
};

absl::Status ValidateSolverConfig(const SolverConfig& cfg);

struct FrontierPoint {
  double beta = 0.0;
  double epsilon = 0.0;
  double gamma_target = 0.0;
  double Gamma = 0.0;  // I(U;Z)
  double Omega = 0.0;  // I(S;Z)
  double nu = 0.0;     // I(X;Z|S)
  double ixz = 0.0;    // I(X;Z)
  double objective = 0.0;
  bool converged = false;
  // Encoder X -> Zhat (before the mechanism).
  Channel encoder = Channel::Identity(1);
};

// Randomized response over one coordinate with k = max(2, |X|), so that the
// intermediate alphabet matches the input alphabet.
absl::StatusOr<RandomizedResponse> DefaultMechanism(const JointSourceUSX& src,
                                                    double epsilon);

struct ObjectiveGradient {
  double value = 0.0;
  Matrix grad;  // d value / d logits
};

// L(logits) = I(X;Z|S) + beta * I(U;Z) for encoder softmax(logits) followed
// by `mech`, with its gradient. `logits` is |X| x mech.in_card().
absl::StatusOr<ObjectiveGradient> EvaluateObjective(const JointSourceUSX& src,
                                                    const Channel& mech,
                                                    const Matrix& logits,
                                                    double beta);

// Exact information quantities for encoder `enc` followed by `mech`; beta,
// epsilon and gamma_target are left at zero.
absl::StatusOr<FrontierPoint> EvaluateEncoder(const JointSourceUSX& src,
                                              const Channel& enc,
                                              const Channel& mech,
                                              double beta);

absl::StatusOr<FrontierPoint> SolveG(const JointSourceUSX& src,
                                     const RandomizedResponse& mech,
                                     const SolverConfig& cfg);

struct BruteforceResult {
  double min_leakage = 0.0;
  double utility = 0.0;  // I(U;Z) at the minimizer
  Channel encoder = Channel::Identity(1);
  // Largest I(U;Z) over all candidates.
  double max_utility = 0.0;
  long candidates = 0;
};

inline constexpr int kOracleMaxCard = 4;
inline constexpr double kOracleFeasibilitySlack = 1e-6;

// Minimum of I(S;Z) subject to I(U;Z) >= gamma - 1e-6 over encoders X -> Z
// with |Z| = |X|. Every deterministic encoder plus `budget` seeded Dirichlet
// channels are each shrunk toward their own output marginal until the
// utility constraint is tight.
absl::StatusOr<BruteforceResult> SolveGBruteforce(const JointSourceUSX& src,
                                                  double gamma, long budget,
                                                  std::uint64_t seed,
                                                  int jobs = 1);

// One point per beta, in grid order. Failed points carry their status.
std::vector<absl::StatusOr<FrontierPoint>> TraceFrontier(
    const JointSourceUSX& src, const RandomizedResponse& mech,
    const std::vector<double>& betas, const SolverConfig& cfg, int jobs = 1);

inline constexpr double kTheoremTolerance = 1e-6;

struct Theorem1Report {
  bool utility_bounds = false;   // gamma - tol <= Gamma <= eps + tol
  bool leakage_bound = false;    // Omega <= eps - nu + tol
  bool lemma2_chain = false;     // Omega <= ixz <= eps + tol
  bool pass() const { return utility_bounds && leakage_bound && lemma2_chain; }
  std::string Describe() const;
};

Theorem1Report CheckTheorem1(const FrontierPoint& pt, double gamma);

struct Corollary2Result {
  double epsilon = 0.0;
  double solver_leakage = 0.0;
  double oracle_leakage = 0.0;
  double gap = 0.0;
  double max_solver_gamma = 0.0;
};

inline constexpr double kCorollary2Slack = 1e-3;

// Solves at epsilon = gamma * (1 + 1e-3) across `betas`, keeps points with
// Gamma >= gamma - 1e-6 and compares their least leakage with the oracle.
// Returns FailedPrecondition when no solver point reaches gamma.
absl::StatusOr<Corollary2Result> CheckCorollary2(
    const JointSourceUSX& src, double gamma, long budget,
    const SolverConfig& cfg, const std::vector<double>& betas, int jobs = 1);

}  // namespace ldpfair

#endif  // LDPFAIR_IB_SOLVER_H_
