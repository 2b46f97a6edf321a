// Copyright 2026 The Privgame Authors
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

#ifndef PRIVGAME_MECHANISM_MECHANISM_H_
#define PRIVGAME_MECHANISM_MECHANISM_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "privgame/core/metrics.h"
#include "privgame/core/model.h"
#include "privgame/lp/solver.h"
#include "privgame/mechanism/pruning.h"

namespace privgame {

enum class CostObjective {
  // Expected cost sum_s pi(s) sum_o p(o|s) c(o,s).
  kAverage,
  // Worst per-secret cost max_s sum_o p(o|s) c(o,s).
  kWorst,
};

struct BuildOptions {
  ApproxOptions approx;
  lp::SolverOptions solver;
  // When non-empty, the program is written here in LP file format before
  // it is solved.
  std::string dump_lp_path;
};

struct MechanismResult {
  Mechanism mechanism;
  // Optimal value of the program (the minimized cost).
  double objective = 0.0;
  // Cost of `mechanism` under the requested objective, recomputed.
  double cost = 0.0;
  // Expected privacy of `mechanism` against the optimal attack.
  double privacy = 0.0;
  // Optimal game values x(o) = min_s_hat sum_s pi(s) p(o|s) d(s_hat,s) as
  // returned by the program; empty for purely differential programs.
  std::vector<double> game_values;
  // Differential check of the constraints the program kept; absent for
  // purely distortion programs.
  std::optional<DifferentialReport> differential;
  // Weight of the uniform mechanism mixed in to remove residual solver
  // error in the differential constraints (0 when unnecessary).
  double repair_weight = 0.0;
  int lp_variables = 0;
  int lp_constraints = 0;
  double solve_seconds = 0.0;
};

// Minimizes the cost subject to an expected inference error of at least
// `d_m` against the optimal attack. Fails with Infeasible, quoting the
// largest achievable level, when `d_m` is out of reach.
absl::StatusOr<MechanismResult> OptimalDistortion(
    const Prior& prior, const MetricSet& metrics, double d_m,
    CostObjective objective = CostObjective::kAverage,
    const BuildOptions& options = {});

// Minimizes the expected cost subject to
// p(o|s) <= exp(eps_m * disting(s,s')) p(o|s') for all o and s != s'.
absl::StatusOr<MechanismResult> OptimalDifferential(
    const Prior& prior, const MetricSet& metrics, double eps_m,
    const BuildOptions& options = {});

// As OptimalDifferential with the flat factor exp(eps_m), applied only to
// pairs with disting(s,s') <= d_eps_m.
absl::StatusOr<MechanismResult> OptimalDifferentialThresholded(
    const Prior& prior, const MetricSet& metrics, double eps_m,
    double d_eps_m, const BuildOptions& options = {});

// Minimizes the expected cost subject to both the distortion and the
// differential constraints.
absl::StatusOr<MechanismResult> OptimalJoint(const Prior& prior,
                                             const MetricSet& metrics,
                                             double d_m, double eps_m,
                                             const BuildOptions& options = {});

// The largest distortion level any mechanism achieves: the optimum of
// maximize sum_o x(o) over the game-value constraints.
absl::StatusOr<double> MaxDistortion(const Prior& prior,
                                     const MetricSet& metrics,
                                     const lp::SolverOptions& options = {});

}  // namespace privgame

#endif  // PRIVGAME_MECHANISM_MECHANISM_H_
