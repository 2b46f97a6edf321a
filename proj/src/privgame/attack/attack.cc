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

#include "privgame/attack/attack.h"

#include <string>

#include "absl/strings/str_cat.h"
#include "privgame/common/errors.h"
#include "privgame/lp/linear_program.h"

namespace privgame {
namespace {

// Variables q(s_hat|o) occupy indices o * |S| + s_hat.
struct AttackProgram {
  lp::LinearProgram lp;
  int num_obs = 0;
  int num_secrets = 0;

  int Var(int o, int s_hat) const { return o * num_secrets + s_hat; }
};

AttackProgram NewAttackProgram(int num_obs, int num_secrets) {
  AttackProgram program;
  program.num_obs = num_obs;
  program.num_secrets = num_secrets;
  program.lp.AddVariables(num_obs * num_secrets);
  for (int o = 0; o < num_obs; ++o) {
    std::vector<lp::Term> row;
    row.reserve(num_secrets);
    for (int s_hat = 0; s_hat < num_secrets; ++s_hat) {
      row.push_back({program.Var(o, s_hat), 1.0});
    }
    program.lp.AddConstraint(std::move(row), lp::Relation::kEqual, 1.0);
  }
  return program;
}

absl::StatusOr<AttackResult> SolveAttackProgram(
    const AttackProgram& program, const Mechanism& mech,
    const lp::SolverOptions& options, std::string_view name) {
  PRIVGAME_ASSIGN_OR_RETURN(lp::LpSolution solution,
                            lp::Solve(program.lp, options));
  if (solution.status != lp::SolveStatus::kOptimal) {
    return SolverFailureError(absl::StrCat(
        std::string(name), " program reported ",
        std::string(lp::SolveStatusName(solution.status))));
  }
  Table rows(program.num_obs, program.num_secrets);
  for (int o = 0; o < program.num_obs; ++o) {
    for (int s_hat = 0; s_hat < program.num_secrets; ++s_hat) {
      rows(o, s_hat) = solution.values[program.Var(o, s_hat)];
    }
  }
  PRIVGAME_ASSIGN_OR_RETURN(
      Attack attack, Attack::CreateNormalized(mech.observables(),
                                              mech.secrets(), std::move(rows)));
  return AttackResult{std::move(attack), solution.objective_value};
}

// w(o, s_hat) = sum_s weight(s) p(o|s) d(s_hat, s).
Table ExpectedErrorWeights(const Mechanism& mech, const MetricSet& metrics,
                           const std::vector<double>& weight) {
  const int ns = mech.num_rows();
  const int no = mech.num_cols();
  Table w = Table::Zero(no, ns);
  for (int s = 0; s < ns; ++s) {
    if (weight[s] == 0.0) continue;
    for (int o = 0; o < no; ++o) {
      const double mass = weight[s] * mech(s, o);
      if (mass == 0.0) continue;
      for (int s_hat = 0; s_hat < ns; ++s_hat) {
        w(o, s_hat) += mass * metrics.privacy()(s_hat, s);
      }
    }
  }
  return w;
}

absl::Status CheckInputs(const Mechanism& mech, const MetricSet& metrics) {
  return CheckCompatible(mech, metrics);
}

}  // namespace

absl::StatusOr<AttackResult> OptimalAttack(const Prior& prior,
                                           const Mechanism& mech,
                                           const MetricSet& metrics,
                                           const lp::SolverOptions& options) {
  PRIVGAME_RETURN_IF_ERROR(CheckCompatible(prior, mech));
  PRIVGAME_RETURN_IF_ERROR(CheckInputs(mech, metrics));
  AttackProgram program = NewAttackProgram(mech.num_cols(), mech.num_rows());
  const Table w = ExpectedErrorWeights(mech, metrics, prior.probs());
  for (int o = 0; o < program.num_obs; ++o) {
    for (int s_hat = 0; s_hat < program.num_secrets; ++s_hat) {
      program.lp.SetObjectiveCoefficient(program.Var(o, s_hat), w(o, s_hat));
    }
  }
  return SolveAttackProgram(program, mech, options, "optimal attack");
}

absl::StatusOr<Attack> OptimalAttackClosedForm(const Prior& prior,
                                               const Mechanism& mech,
                                               const MetricSet& metrics) {
  PRIVGAME_RETURN_IF_ERROR(CheckCompatible(prior, mech));
  PRIVGAME_RETURN_IF_ERROR(CheckInputs(mech, metrics));
  const Table w = ExpectedErrorWeights(mech, metrics, prior.probs());
  Table rows = Table::Zero(w.rows(), w.cols());
  for (int o = 0; o < w.rows(); ++o) {
    int best = 0;
    for (int s_hat = 1; s_hat < w.cols(); ++s_hat) {
      if (w(o, s_hat) < w(o, best)) best = s_hat;
    }
    rows(o, best) = 1.0;
  }
  return Attack::Create(mech.observables(), mech.secrets(), std::move(rows));
}

absl::StatusOr<BayesAttackResult> BayesAttack(const Prior& prior,
                                              const Mechanism& mech) {
  PRIVGAME_RETURN_IF_ERROR(CheckCompatible(prior, mech));
  const int ns = mech.num_rows();
  const int no = mech.num_cols();
  Table rows(no, ns);
  std::vector<int> unreachable;
  for (int o = 0; o < no; ++o) {
    double marginal = 0.0;
    for (int s = 0; s < ns; ++s) {
      rows(o, s) = prior[s] * mech(s, o);
      marginal += rows(o, s);
    }
    if (marginal > 0.0) {
      rows.row(o) /= marginal;
    } else {
      rows.row(o).setConstant(1.0 / ns);
      unreachable.push_back(o);
    }
  }
  PRIVGAME_ASSIGN_OR_RETURN(
      Attack attack,
      Attack::Create(mech.observables(), mech.secrets(), std::move(rows)));
  return BayesAttackResult{std::move(attack), std::move(unreachable)};
}

absl::StatusOr<AttackResult> MinimaxAttackSum(
    const Mechanism& mech, const MetricSet& metrics,
    const lp::SolverOptions& options) {
  PRIVGAME_RETURN_IF_ERROR(CheckInputs(mech, metrics));
  AttackProgram program = NewAttackProgram(mech.num_cols(), mech.num_rows());
  const Table w = ExpectedErrorWeights(
      mech, metrics, std::vector<double>(mech.num_rows(), 1.0));
  for (int o = 0; o < program.num_obs; ++o) {
    for (int s_hat = 0; s_hat < program.num_secrets; ++s_hat) {
      program.lp.SetObjectiveCoefficient(program.Var(o, s_hat), w(o, s_hat));
    }
  }
  return SolveAttackProgram(program, mech, options, "minimax-sum attack");
}

absl::StatusOr<AttackResult> MinimaxAttack(const Mechanism& mech,
                                           const MetricSet& metrics,
                                           const lp::SolverOptions& options) {
  PRIVGAME_RETURN_IF_ERROR(CheckInputs(mech, metrics));
  const int ns = mech.num_rows();
  const int no = mech.num_cols();
  AttackProgram program = NewAttackProgram(no, ns);
  const int y = program.lp.AddVariable(0.0, lp::kInfinity, "y");
  program.lp.SetObjectiveCoefficient(y, 1.0);
  // E_s - y <= 0 for every secret s.
  for (int s = 0; s < ns; ++s) {
    std::vector<lp::Term> row;
    for (int o = 0; o < no; ++o) {
      if (mech(s, o) == 0.0) continue;
      for (int s_hat = 0; s_hat < ns; ++s_hat) {
        row.push_back(
            {program.Var(o, s_hat), mech(s, o) * metrics.privacy()(s_hat, s)});
      }
    }
    row.push_back({y, -1.0});
    program.lp.AddConstraint(std::move(row), lp::Relation::kLessEqual, 0.0);
  }
  return SolveAttackProgram(program, mech, options, "minimax attack");
}

absl::StatusOr<AttackResult> MinimaxAttackPairwise(
    const Mechanism& mech, const MetricSet& metrics,
    const lp::SolverOptions& options) {
  PRIVGAME_RETURN_IF_ERROR(CheckInputs(mech, metrics));
  const int ns = mech.num_rows();
  const int no = mech.num_cols();
  AttackProgram program = NewAttackProgram(no, ns);
  const int y = program.lp.AddVariable(0.0, lp::kInfinity, "y");
  program.lp.SetObjectiveCoefficient(y, 1.0);
  // sum_o p(o|s) q(s_hat|o) d(s_hat,s) - y <= 0 for every (s, s_hat).
  for (int s = 0; s < ns; ++s) {
    for (int s_hat = 0; s_hat < ns; ++s_hat) {
      const double d = metrics.privacy()(s_hat, s);
      if (d == 0.0) continue;
      std::vector<lp::Term> row;
      for (int o = 0; o < no; ++o) {
        if (mech(s, o) != 0.0) {
          row.push_back({program.Var(o, s_hat), mech(s, o) * d});
        }
      }
      if (row.empty()) continue;
      row.push_back({y, -1.0});
      program.lp.AddConstraint(std::move(row), lp::Relation::kLessEqual, 0.0);
    }
  }
  return SolveAttackProgram(program, mech, options, "pairwise minimax attack");
}

}  // namespace privgame
