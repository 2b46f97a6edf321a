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

#include "privgame/lp/solver.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "privgame/common/errors.h"

namespace privgame::lp {

std::string_view SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kInfeasible:
      return "Infeasible";
    case SolveStatus::kUnbounded:
      return "Unbounded";
  }
  return "Unknown";
}

namespace {

// Snaps interior iterates into their bounds and rejects solutions whose
// scaled violation exceeds the feasibility tolerance.
absl::StatusOr<LpSolution> CheckSolution(const LinearProgram& lp,
                                         const SolverOptions& options,
                                         absl::StatusOr<LpSolution> result) {
  if (!result.ok() || result->status != SolveStatus::kOptimal) return result;
  LpSolution& solution = *result;
  for (int j = 0; j < lp.num_vars(); ++j) {
    solution.values[j] =
        std::clamp(solution.values[j], lp.lower(j), lp.upper(j));
  }
  solution.objective_value = lp.Evaluate(solution.values);
  const double violation = lp.MaxViolation(solution.values);
  if (!(violation <= options.feasibility_tolerance)) {
    return NumericalFailureError(absl::StrCat(
        "solution violates constraints by ", violation, " (tolerance ",
        options.feasibility_tolerance, ")"));
  }
  return result;
}

}  // namespace

absl::StatusOr<LpSolution> Solve(const LinearProgram& lp,
                                 const SolverOptions& options) {
  PRIVGAME_RETURN_IF_ERROR(lp.Validate());
  if (options.algorithm == Algorithm::kSimplex) {
    return CheckSolution(lp, options, SolveSimplex(lp, options));
  }
  if (options.algorithm == Algorithm::kInteriorPoint) {
    return CheckSolution(lp, options, SolveInteriorPoint(lp, options));
  }
  if (SimplexTableauEntries(lp) <= options.max_simplex_tableau_entries) {
    absl::StatusOr<LpSolution> result =
        CheckSolution(lp, options, SolveSimplex(lp, options));
    // The dense tableau can lose accuracy on badly scaled programs; the
    // interior point method is the fallback.
    if (ErrorKindOf(result.status()) != ErrorKind::kNumericalFailure) {
      return result;
    }
  }
  return CheckSolution(lp, options, SolveInteriorPoint(lp, options));
}

}  // namespace privgame::lp
