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

#include "privgame/mechanism/mechanism.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "absl/strings/str_cat.h"
#include "privgame/attack/attack.h"
#include "privgame/common/errors.h"
#include "privgame/lp/linear_program.h"
#include "privgame/lp/lp_format.h"

namespace privgame {
namespace {

// Achieved privacy may fall short of d_m by at most this much.
constexpr double kDistortionPostCheckTolerance = 1e-6;

enum class DifferentialKind { kNone, kScaled, kThresholded };

struct ProgramSpec {
  bool distortion = false;
  double d_m = 0.0;
  // Maximize sum_o x(o) instead of minimizing a cost.
  bool maximize_distortion = false;
  DifferentialKind differential = DifferentialKind::kNone;
  double eps_m = 0.0;
  double d_eps_m = 0.0;
  CostObjective objective = CostObjective::kAverage;
};

struct Program {
  lp::LinearProgram lp;
  int num_secrets = 0;
  int num_obs = 0;
  // Variable of p(o|s) at s * |O| + o, or -1 when pruned.
  std::vector<int> p_var;
  // Variable of x(o), empty without distortion constraints.
  std::vector<int> x_var;

  int P(int s, int o) const { return p_var[static_cast<size_t>(s) * num_obs + o]; }
};

// Upper bound on sum_o x(o): every x(o) is at most the s_hat-term for any
// fixed s_hat, so the sum is at most min_{s_hat} sum_s pi(s) d(s_hat, s).
// Mechanisms whose rows do not depend on s attain it.
double DistortionCeiling(const Prior& prior, const MetricSet& metrics) {
  double best = std::numeric_limits<double>::infinity();
  for (int s_hat = 0; s_hat < metrics.num_secrets(); ++s_hat) {
    double total = 0.0;
    for (int s = 0; s < metrics.num_secrets(); ++s) {
      total += prior[s] * metrics.privacy()(s_hat, s);
    }
    best = std::min(best, total);
  }
  return best;
}

double DifferentialFactor(const ProgramSpec& spec, double dist) {
  return spec.differential == DifferentialKind::kThresholded
             ? std::exp(spec.eps_m)
             : std::exp(spec.eps_m * dist);
}

// Whether the ordered pair (s, t) carries a differential constraint.
bool Constrained(const ProgramSpec& spec, const PrunedSupport& support,
                 const MetricSet& metrics, int s, int t) {
  if (s == t || !support.KeepPair(s, t)) return false;
  if (spec.differential == DifferentialKind::kThresholded &&
      metrics.disting()(s, t) > spec.d_eps_m) {
    return false;
  }
  return spec.differential != DifferentialKind::kNone;
}

Program BuildProgram(const Prior& prior, const MetricSet& metrics,
                     const PrunedSupport& support, const ProgramSpec& spec) {
  Program program;
  const int ns = metrics.num_secrets();
  const int no = metrics.num_observables();
  program.num_secrets = ns;
  program.num_obs = no;
  lp::LinearProgram& lp = program.lp;

  program.p_var.assign(static_cast<size_t>(ns) * no, -1);
  for (int s = 0; s < ns; ++s) {
    for (int o = 0; o < no; ++o) {
      if (!support.Allowed(s, o)) continue;
      const int var = lp.AddVariable(0.0, lp::kInfinity,
                                     absl::StrCat("p_", s, "_", o));
      program.p_var[static_cast<size_t>(s) * no + o] = var;
    }
  }

  // Each row of the mechanism is a distribution.
  for (int s = 0; s < ns; ++s) {
    std::vector<lp::Term> row;
    for (int o = 0; o < no; ++o) {
      if (program.P(s, o) >= 0) row.push_back({program.P(s, o), 1.0});
    }
    lp.AddConstraint(std::move(row), lp::Relation::kEqual, 1.0);
  }

  if (!spec.maximize_distortion) {
    if (spec.objective == CostObjective::kAverage) {
      for (int s = 0; s < ns; ++s) {
        for (int o = 0; o < no; ++o) {
          if (program.P(s, o) >= 0) {
            lp.SetObjectiveCoefficient(program.P(s, o),
                                       prior[s] * metrics.cost()(o, s));
          }
        }
      }
    } else {
      const int z = lp.AddVariable(0.0, lp::kInfinity, "z");
      lp.SetObjectiveCoefficient(z, 1.0);
      for (int s = 0; s < ns; ++s) {
        std::vector<lp::Term> row;
        for (int o = 0; o < no; ++o) {
          if (program.P(s, o) >= 0) {
            row.push_back({program.P(s, o), metrics.cost()(o, s)});
          }
        }
        row.push_back({z, -1.0});
        lp.AddConstraint(std::move(row), lp::Relation::kLessEqual, 0.0);
      }
    }
  }

  if (spec.distortion || spec.maximize_distortion) {
    program.x_var.resize(no);
    for (int o = 0; o < no; ++o) {
      program.x_var[o] =
          lp.AddVariable(0.0, lp::kInfinity, absl::StrCat("x_", o));
    }
    // x(o) is at most the adversary's expected error for every guess s_hat.
    for (int o = 0; o < no; ++o) {
      for (int s_hat = 0; s_hat < ns; ++s_hat) {
        std::vector<lp::Term> row;
        for (int s = 0; s < ns; ++s) {
          if (program.P(s, o) < 0) continue;
          const double coef = prior[s] * metrics.privacy()(s_hat, s);
          if (coef != 0.0) row.push_back({program.P(s, o), coef});
        }
        row.push_back({program.x_var[o], -1.0});
        lp.AddConstraint(std::move(row), lp::Relation::kGreaterEqual, 0.0);
      }
    }
    if (spec.maximize_distortion) {
      lp.SetSense(lp::Sense::kMaximize);
      for (int o = 0; o < no; ++o) {
        lp.SetObjectiveCoefficient(program.x_var[o], 1.0);
      }
    } else {
      std::vector<lp::Term> row;
      for (int o = 0; o < no; ++o) row.push_back({program.x_var[o], 1.0});
      lp.AddConstraint(std::move(row), lp::Relation::kGreaterEqual, spec.d_m);
    }
  }

  if (spec.differential != DifferentialKind::kNone) {
    for (int s = 0; s < ns; ++s) {
      for (int t = 0; t < ns; ++t) {
        if (!Constrained(spec, support, metrics, s, t)) continue;
        const double factor = DifferentialFactor(spec, metrics.disting()(s, t));
        // A unit factor in both directions forces equality; emit it once.
        const bool equality = factor == 1.0 &&
                              Constrained(spec, support, metrics, t, s) &&
                              DifferentialFactor(spec, metrics.disting()(t, s)) == 1.0;
        if (equality && t < s) continue;
        for (int o = 0; o < no; ++o) {
          const int ps = program.P(s, o);
          const int pt = program.P(t, o);
          if (ps < 0 && (pt < 0 || !equality)) continue;
          if (ps < 0 || pt < 0) {
            // One side is pruned to zero, so the other must be zero too.
            const int var = ps < 0 ? pt : ps;
            lp.SetBounds(var, 0.0, 0.0);
            continue;
          }
          if (!std::isfinite(factor)) continue;
          if (equality) {
            lp.AddConstraint({{ps, 1.0}, {pt, -1.0}}, lp::Relation::kEqual, 0.0);
          } else {
            lp.AddConstraint({{ps, 1.0}, {pt, -factor}},
                             lp::Relation::kLessEqual, 0.0);
          }
        }
      }
    }
  }
  return program;
}

// Mixes `rows` with the uniform mechanism just enough to absorb solver
// error in the differential constraints. Mixing preserves every
// differential constraint with factor >= 1 and, since the privacy against
// the optimal attack is concave in the mechanism and the uniform mechanism
// attains the largest achievable privacy, never lowers that privacy below
// the unmixed level by more than the mixed weight allows.
double RepairDifferential(Table& rows, const MetricSet& metrics,
                          const PrunedSupport& support,
                          const ProgramSpec& spec) {
  const int ns = static_cast<int>(rows.rows());
  const int no = static_cast<int>(rows.cols());
  double weight = 0.0;
  for (int s = 0; s < ns; ++s) {
    for (int t = 0; t < ns; ++t) {
      if (!Constrained(spec, support, metrics, s, t)) continue;
      const double factor = DifferentialFactor(spec, metrics.disting()(s, t));
      if (!(factor > 1.0)) continue;
      const double slack = (factor - 1.0) / no;
      for (int o = 0; o < no; ++o) {
        const double rhs = rows(t, o) == 0.0 ? 0.0 : factor * rows(t, o);
        const double excess = rows(s, o) - rhs;
        if (excess > 0.0) {
          const double needed =
              std::isfinite(slack) ? excess / (excess + slack) : 0.0;
          weight = std::max(weight, needed);
        }
      }
    }
  }
  if (weight == 0.0) return 0.0;
  // The factor two keeps the repaired constraints strictly satisfied
  // despite rounding; rows with infinite factors need only positivity.
  weight = std::min(1.0, std::max(2.0 * weight, 1e-15));
  rows = (1.0 - weight) * rows +
         Table::Constant(ns, no, weight / static_cast<double>(no));
  return weight;
}

absl::StatusOr<MechanismResult> BuildMechanism(const Prior& prior,
                                               const MetricSet& metrics,
                                               ProgramSpec spec,
                                               const BuildOptions& options) {
  if (!prior.secrets().SameLabels(metrics.secrets())) {
    return DimensionMismatchError(
        "prior and metrics are over different secret spaces");
  }
  PRIVGAME_ASSIGN_OR_RETURN(PrunedSupport support,
                            PruneConstraints(metrics, options.approx));
  const double requested_d_m = spec.d_m;
  const double ceiling = DistortionCeiling(prior, metrics);
  const double ceiling_slack =
      options.solver.feasibility_tolerance * std::max(1.0, ceiling);
  if (spec.distortion && !support.prunes_support()) {
    if (spec.d_m > ceiling + ceiling_slack) {
      return InfeasibleError(absl::StrCat(
          "d_m = ", spec.d_m,
          " exceeds the largest achievable distortion d_m^max = ", ceiling));
    }
    // Within tolerance of the ceiling, target the ceiling itself.
    spec.d_m = std::min(spec.d_m, ceiling);
  }

  const auto start = std::chrono::steady_clock::now();
  Program program = BuildProgram(prior, metrics, support, spec);
  if (!options.dump_lp_path.empty()) {
    PRIVGAME_RETURN_IF_ERROR(lp::WriteLpFile(program.lp, options.dump_lp_path));
  }
  PRIVGAME_ASSIGN_OR_RETURN(lp::LpSolution solution,
                            lp::Solve(program.lp, options.solver));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  if (solution.status == lp::SolveStatus::kInfeasible) {
    if (support.prunes_support() &&
        (!spec.distortion || requested_d_m <= ceiling + ceiling_slack)) {
      return MakeError(ErrorKind::kInfeasibleAfterPruning,
                       "the pruned support admits no feasible mechanism");
    }
    return InfeasibleError(absl::StrCat(
        "no mechanism meets the constraints (d_m = ", requested_d_m,
        ", d_m^max = ", ceiling, ")"));
  }
  if (solution.status != lp::SolveStatus::kOptimal) {
    return SolverFailureError(
        absl::StrCat("mechanism program reported ",
                     std::string(lp::SolveStatusName(solution.status))));
  }

  const int ns = program.num_secrets;
  const int no = program.num_obs;
  Table rows = Table::Zero(ns, no);
  for (int s = 0; s < ns; ++s) {
    for (int o = 0; o < no; ++o) {
      if (program.P(s, o) >= 0) rows(s, o) = solution.values[program.P(s, o)];
    }
  }
  rows = Table(Mechanism::CreateNormalized(metrics.secrets(),
                                           metrics.observables(), rows)
                   ->rows());

  MechanismResult result{Mechanism::Uniform(metrics.secrets(),
                                            metrics.observables())};
  if (spec.differential != DifferentialKind::kNone &&
      !support.prunes_support()) {
    result.repair_weight = RepairDifferential(rows, metrics, support, spec);
  }
  PRIVGAME_ASSIGN_OR_RETURN(
      result.mechanism,
      Mechanism::CreateNormalized(metrics.secrets(), metrics.observables(),
                                  std::move(rows)));
  result.objective = solution.objective_value;
  result.lp_variables = program.lp.num_vars();
  result.lp_constraints = program.lp.num_constraints();
  result.solve_seconds = seconds;
  for (int var : program.x_var) result.game_values.push_back(solution.values[var]);

  const Mechanism& mech = result.mechanism;
  if (spec.objective == CostObjective::kAverage) {
    PRIVGAME_ASSIGN_OR_RETURN(result.cost, ExpectedCost(prior, mech, metrics));
  } else {
    PRIVGAME_ASSIGN_OR_RETURN(result.cost, WorstCaseCost(mech, metrics));
  }
  PRIVGAME_ASSIGN_OR_RETURN(Attack attack,
                            OptimalAttackClosedForm(prior, mech, metrics));
  PRIVGAME_ASSIGN_OR_RETURN(result.privacy,
                            ExpectedPrivacy(prior, mech, attack, metrics));

  if (spec.distortion &&
      result.privacy < requested_d_m - kDistortionPostCheckTolerance) {
    return MakeError(
        ErrorKind::kPostCheckFailed,
        absl::StrCat("mechanism achieves privacy ", result.privacy,
                     " against the optimal attack, below d_m = ",
                     requested_d_m));
  }
  if (spec.differential != DifferentialKind::kNone) {
    std::optional<double> threshold;
    if (spec.differential == DifferentialKind::kThresholded) {
      threshold = spec.d_eps_m;
    }
    PRIVGAME_ASSIGN_OR_RETURN(
        DifferentialReport report,
        VerifyDifferential(mech, metrics, spec.eps_m, threshold,
                           kDifferentialTolerance, support.radius_disting()));
    result.differential = report;
    if (!report.passed) {
      return MakeError(ErrorKind::kPostCheckFailed,
                       absl::StrCat("differential check failed: ",
                                    DescribeReport(report, mech)));
    }
  }
  return result;
}

absl::Status CheckEps(double eps_m) {
  if (!(eps_m >= 0.0) || std::isnan(eps_m)) {
    return InvalidArgumentError(absl::StrCat("eps_m = ", eps_m, " must be >= 0"));
  }
  return absl::OkStatus();
}

absl::Status CheckDm(double d_m) {
  if (!(d_m >= 0.0) || !std::isfinite(d_m)) {
    return InvalidArgumentError(absl::StrCat("d_m = ", d_m, " must be >= 0"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<MechanismResult> OptimalDistortion(const Prior& prior,
                                                  const MetricSet& metrics,
                                                  double d_m,
                                                  CostObjective objective,
                                                  const BuildOptions& options) {
  PRIVGAME_RETURN_IF_ERROR(CheckDm(d_m));
  ProgramSpec spec;
  spec.distortion = true;
  spec.d_m = d_m;
  spec.objective = objective;
  return BuildMechanism(prior, metrics, spec, options);
}

absl::StatusOr<MechanismResult> OptimalDifferential(
    const Prior& prior, const MetricSet& metrics, double eps_m,
    const BuildOptions& options) {
  PRIVGAME_RETURN_IF_ERROR(CheckEps(eps_m));
  ProgramSpec spec;
  spec.differential = DifferentialKind::kScaled;
  spec.eps_m = eps_m;
  return BuildMechanism(prior, metrics, spec, options);
}

absl::StatusOr<MechanismResult> OptimalDifferentialThresholded(
    const Prior& prior, const MetricSet& metrics, double eps_m,
    double d_eps_m, const BuildOptions& options) {
  PRIVGAME_RETURN_IF_ERROR(CheckEps(eps_m));
  if (!(d_eps_m >= 0.0)) {
    return InvalidArgumentError(
        absl::StrCat("d_eps_m = ", d_eps_m, " must be >= 0"));
  }
  ProgramSpec spec;
  spec.differential = DifferentialKind::kThresholded;
  spec.eps_m = eps_m;
  spec.d_eps_m = d_eps_m;
  return BuildMechanism(prior, metrics, spec, options);
}

absl::StatusOr<MechanismResult> OptimalJoint(const Prior& prior,
                                             const MetricSet& metrics,
                                             double d_m, double eps_m,
                                             const BuildOptions& options) {
  PRIVGAME_RETURN_IF_ERROR(CheckDm(d_m));
  PRIVGAME_RETURN_IF_ERROR(CheckEps(eps_m));
  ProgramSpec spec;
  spec.distortion = true;
  spec.d_m = d_m;
  spec.differential = DifferentialKind::kScaled;
  spec.eps_m = eps_m;
  return BuildMechanism(prior, metrics, spec, options);
}

absl::StatusOr<double> MaxDistortion(const Prior& prior,
                                     const MetricSet& metrics,
                                     const lp::SolverOptions& options) {
  if (!prior.secrets().SameLabels(metrics.secrets())) {
    return DimensionMismatchError(
        "prior and metrics are over different secret spaces");
  }
  PRIVGAME_ASSIGN_OR_RETURN(PrunedSupport support,
                            PruneConstraints(metrics, ApproxOptions{}));
  ProgramSpec spec;
  spec.maximize_distortion = true;
  Program program = BuildProgram(prior, metrics, support, spec);
  PRIVGAME_ASSIGN_OR_RETURN(lp::LpSolution solution,
                            lp::Solve(program.lp, options));
  if (solution.status != lp::SolveStatus::kOptimal) {
    return SolverFailureError(
        absl::StrCat("distortion bound program reported ",
                     std::string(lp::SolveStatusName(solution.status))));
  }
  return std::max(0.0, solution.objective_value);
}

}  // namespace privgame
