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

#ifndef PRIVGAME_LP_SOLVER_H_
#define PRIVGAME_LP_SOLVER_H_

#include <cstddef>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "privgame/lp/linear_program.h"

namespace privgame::lp {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded };

enum class Algorithm {
  // Dense simplex when the tableau fits `max_simplex_tableau_entries`,
  // interior point otherwise.
  kAuto,
  // Two-phase dense tableau simplex with Bland's rule.
  kSimplex,
  // Homogeneous self-dual interior point on sparse normal equations.
  kInteriorPoint,
};

std::string_view SolveStatusName(SolveStatus status);

struct SolverOptions {
  double feasibility_tolerance = 1e-7;
  double optimality_tolerance = 1e-8;
  Algorithm algorithm = Algorithm::kAuto;
  size_t max_simplex_tableau_entries = 1'500'000;
  // 0 selects a size-dependent default.
  int max_iterations = 0;
};

struct LpSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  // Empty unless status == kOptimal.
  std::vector<double> values;
  double objective_value = 0.0;
  int iterations = 0;
  Algorithm algorithm_used = Algorithm::kAuto;
};

// Solves `lp`. Infeasible and unbounded instances are reported through
// LpSolution::status; a kNumericalFailure error is returned when the solver
// cannot certify any status, including when an "optimal" point fails
// re-substitution at `feasibility_tolerance`.
absl::StatusOr<LpSolution> Solve(const LinearProgram& lp,
                                 const SolverOptions& options = {});

// Entry points for each algorithm; Solve() dispatches to these and then
// verifies the result against the original program.
absl::StatusOr<LpSolution> SolveSimplex(const LinearProgram& lp,
                                        const SolverOptions& options);
absl::StatusOr<LpSolution> SolveInteriorPoint(const LinearProgram& lp,
                                              const SolverOptions& options);

// Number of doubles in the dense simplex tableau `lp` would need.
size_t SimplexTableauEntries(const LinearProgram& lp);

}  // namespace privgame::lp

#endif  // PRIVGAME_LP_SOLVER_H_
