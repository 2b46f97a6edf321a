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

#ifndef PRIVGAME_HARNESS_EXPERIMENTS_H_
#define PRIVGAME_HARNESS_EXPERIMENTS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "privgame/core/model.h"
#include "privgame/geo/grid.h"
#include "privgame/geo/trace.h"
#include "privgame/harness/csv_writer.h"
#include "privgame/lp/solver.h"
#include "privgame/mechanism/mechanism.h"

namespace privgame::harness {

// 8 x 6 cells over 6 x 4 km.
geo::Grid DefaultGrid();

// Settings shared by all experiments. Empty ladders select the
// experiment's default.
struct ExperimentConfig {
  geo::Grid grid = DefaultGrid();
  int users = 10;
  uint64_t seed = 1;
  // Visits per synthetic trace and the smoothing of the trace prior.
  int trace_length = 500;
  double prior_smoothing = 0.0;
  geo::MobilityParams mobility;

  // Default 0.15, 0.3, ..., 0.9 (scenario 3: 0.2, 0.4, ..., 1.0; approx
  // sweep: 0.5).
  std::vector<double> eps_ladder;
  // Scenario 3 distortion thresholds, capped per user at the largest
  // achievable level, which is always included. Default 0.5, 1.0, ...
  std::vector<double> dm_ladder;
  // Scenario 2 offsets added to the differential mechanism's privacy.
  // Default 0.1, 0.2, 0.4.
  std::vector<double> dm_offsets;
  // Prior-mismatch study: the adversary's prior boosts the `sharpen_k`
  // likeliest cells by each beta. Default betas 1, 2, 4, 8.
  int sharpen_k = 2;
  std::vector<double> sharpen_betas;
  // Approximation sweep: distinguishability radii (default 0.2, 0.4, ...,
  // 1.0 times the grid diameter), an optional distortion threshold for
  // the swept mechanism (0 sweeps the differential mechanism, otherwise
  // the joint one) and an optional fixed support radius.
  std::vector<double> radius_ladder;
  double approx_dm = 0.0;
  std::optional<double> approx_support_radius;

  CostObjective objective = CostObjective::kAverage;
  lp::SolverOptions solver;
};

// Parses "a:b:step" into a, a + step, ..., up to b (inclusive, with a
// relative slack of 1e-9 steps). A single number is a one-element ladder.
absl::StatusOr<std::vector<double>> ParseLadder(const std::string& text);

struct UserInstance {
  std::string id;
  Prior prior;
};

// Synthetic users "user0", "user1", ...; user u's trace is seeded with
// seed * 1000 + u.
absl::StatusOr<std::vector<UserInstance>> MakeUsers(
    const ExperimentConfig& config);

enum MechanismKind { kDifferentialMech = 0, kDistortionMech = 1, kJointMech = 2 };
inline constexpr int kNumMechanismKinds = 3;

// One constructed mechanism, evaluated and re-validated.
struct Evaluation {
  // "ok", or the error kind and message of construction or validation.
  std::string status = "not run";
  bool ok = false;
  double cost = 0.0;
  // Expected privacy against the optimal and the Bayesian attack.
  double ap_optimal = 0.0;
  double ap_bayes = 0.0;
  double seconds = 0.0;
};

// Scenarios 1 and 2: per user and eps, the differential mechanism p_eps,
// d_m = AP(p_eps) + offset, and the distortion and joint mechanisms at d_m.
struct TripleRow {
  std::string user;
  double eps = 0.0;
  double offset = 0.0;
  std::optional<double> dm;
  double dm_max = 0.0;
  std::array<Evaluation, kNumMechanismKinds> mech;
};

// Scenario 3: one cell of the (eps, d_m) sweep.
struct SweepRow {
  std::string user;
  double eps = 0.0;
  double dm = 0.0;
  double dm_max = 0.0;
  std::array<Evaluation, kNumMechanismKinds> mech;
  // (AP(joint) - max(AP(eps-only), AP(d-only))) / max(...), when all three
  // mechanisms exist.
  std::optional<double> equality_gap;
};

// Mechanisms built with the user's prior pi, attacked by the optimal
// attack for pi and for a sharpened prior pi_hat.
struct MismatchRow {
  std::string user;
  double eps = 0.0;
  double dm = 0.0;
  int k = 0;
  double beta = 1.0;
  double entropy_prior = 0.0;
  double entropy_sharpened = 0.0;
  std::string status = "not run";
  bool ok = false;
  // Index by kDifferentialMech / kDistortionMech. `ap_prior` is the error
  // of the pi-optimal attack under pi (the level the mechanism was designed
  // for). The other two are measured under pi_hat, the prior a better
  // informed adversary actually holds: `ap_naive` for the pi-optimal
  // attack and `ap_sharpened` for the pi_hat-optimal one.
  std::array<double, 2> ap_prior{};
  std::array<double, 2> ap_naive{};
  std::array<double, 2> ap_sharpened{};
};

// One radius of the approximation sweep.
struct ApproxRow {
  std::string user;
  double eps = 0.0;
  double dm = 0.0;
  double radius = 0.0;
  std::string status = "not run";
  bool ok = false;
  double ap_exact = 0.0;
  double ap_pruned = 0.0;
  double error = 0.0;
  double cost_exact = 0.0;
  double cost_pruned = 0.0;
  double seconds_exact = 0.0;
  double seconds_pruned = 0.0;
  int constraints_exact = 0;
  int constraints_pruned = 0;
};

template <typename Row>
struct ExperimentResult {
  std::vector<Row> rows;
  CsvTable table;
};

absl::StatusOr<ExperimentResult<TripleRow>> RunScenario1(
    const ExperimentConfig& config);
absl::StatusOr<ExperimentResult<TripleRow>> RunScenario2(
    const ExperimentConfig& config);
// Rows sorted by the joint mechanism's privacy (failed cells last).
absl::StatusOr<ExperimentResult<SweepRow>> RunScenario3(
    const ExperimentConfig& config);
absl::StatusOr<ExperimentResult<MismatchRow>> RunPriorMismatch(
    const ExperimentConfig& config);
absl::StatusOr<ExperimentResult<ApproxRow>> RunApproxSweep(
    const ExperimentConfig& config);

// Runs the experiment named scenario1, scenario2, scenario3, prior or
// approx and returns its table.
absl::StatusOr<CsvTable> RunExperiment(const std::string& name,
                                       const ExperimentConfig& config);

}  // namespace privgame::harness

#endif  // PRIVGAME_HARNESS_EXPERIMENTS_H_
