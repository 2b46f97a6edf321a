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

#ifndef PRIVGAME_ATTACK_ATTACK_H_
#define PRIVGAME_ATTACK_ATTACK_H_

#include <vector>

#include "absl/status/statusor.h"
#include "privgame/core/model.h"
#include "privgame/lp/solver.h"

namespace privgame {

// An attack together with the optimal value of the program that built it.
struct AttackResult {
  Attack attack;
  // Optimal attack: the adversary's expected error. Sum variant: the sum of
  // conditional errors. Minimax variants: the optimal bound y.
  double objective = 0.0;
};

// The attack minimizing the expected estimation error
// sum_{s,o,s_hat} pi(s) p(o|s) q(s_hat|o) d(s_hat,s), solved as an LP.
absl::StatusOr<AttackResult> OptimalAttack(
    const Prior& prior, const Mechanism& mech, const MetricSet& metrics,
    const lp::SolverOptions& options = {});

// The pure strategy mapping each observable o to
// argmin_{s_hat} sum_s pi(s) p(o|s) d(s_hat,s), ties to the lowest index.
// It attains the same expected error as OptimalAttack.
absl::StatusOr<Attack> OptimalAttackClosedForm(const Prior& prior,
                                               const Mechanism& mech,
                                               const MetricSet& metrics);

struct BayesAttackResult {
  Attack attack;
  // Observables with zero marginal probability; their rows are uniform.
  std::vector<int> unreachable;
};

// Posterior q(s_hat|o) = pi(s_hat) p(o|s_hat) / sum_s pi(s) p(o|s).
absl::StatusOr<BayesAttackResult> BayesAttack(const Prior& prior,
                                              const Mechanism& mech);

// Prior-free attack minimizing sum_s E_s, where
// E_s = sum_{o,s_hat} p(o|s) q(s_hat|o) d(s_hat,s).
absl::StatusOr<AttackResult> MinimaxAttackSum(
    const Mechanism& mech, const MetricSet& metrics,
    const lp::SolverOptions& options = {});

// Prior-free attack minimizing max_s E_s.
absl::StatusOr<AttackResult> MinimaxAttack(
    const Mechanism& mech, const MetricSet& metrics,
    const lp::SolverOptions& options = {});

// Prior-free attack minimizing
// max_{s,s_hat} sum_o p(o|s) q(s_hat|o) d(s_hat,s).
absl::StatusOr<AttackResult> MinimaxAttackPairwise(
    const Mechanism& mech, const MetricSet& metrics,
    const lp::SolverOptions& options = {});

}  // namespace privgame

#endif  // PRIVGAME_ATTACK_ATTACK_H_
