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

#include <algorithm>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "privgame/attack/attack.h"
#include "privgame/core/metrics.h"
#include "privgame/core/model.h"
#include "tests/oracles.h"
#include "tests/test_util.h"

namespace privgame {
namespace {

using ::privgame::testing::ExhaustiveAttackError;
using ::privgame::testing::MakeMechanism;
using ::privgame::testing::MakeMetrics;
using ::privgame::testing::MakePrior;
using ::privgame::testing::MakeRandomInstance;
using ::privgame::testing::Matrix;
using ::privgame::testing::RandomInstance;
using ::privgame::testing::RandomSimplexPoint;
using ::privgame::testing::ToTable;

struct Built {
  Prior prior;
  Mechanism mech;
  MetricSet metrics;
};

Built Build(const RandomInstance& inst) {
  return {MakePrior(inst.prior), MakeMechanism(inst.mech),
          MakeMetrics(inst.cost, inst.privacy)};
}

// Per-secret error E_s of an attack, computed without the library.
std::vector<double> PerSecretErrors(const Matrix& mech, const Matrix& attack,
                                    const Matrix& dist) {
  std::vector<double> errors(mech.size(), 0.0);
  for (size_t s = 0; s < mech.size(); ++s) {
    for (size_t o = 0; o < mech[s].size(); ++o) {
      for (size_t g = 0; g < attack[o].size(); ++g) {
        errors[s] += mech[s][o] * attack[o][g] * dist[g][s];
      }
    }
  }
  return errors;
}

TEST(OptimalAttackTest, LpClosedFormAndEnumerationAgree) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int ns = 2 + trial % 4;
    const int no = 2 + (trial / 4) % 4;
    RandomInstance inst = MakeRandomInstance(ns, no, rng);
    Built b = Build(inst);
    absl::StatusOr<AttackResult> lp = OptimalAttack(b.prior, b.mech, b.metrics);
    ASSERT_TRUE(lp.ok()) << lp.status();
    absl::StatusOr<Attack> closed =
        OptimalAttackClosedForm(b.prior, b.mech, b.metrics);
    ASSERT_TRUE(closed.ok());
    const double exhaustive =
        ExhaustiveAttackError(inst.prior, inst.mech, inst.privacy);
    EXPECT_NEAR(lp->objective, exhaustive, 1e-7);
    EXPECT_NEAR(*ExpectedPrivacy(b.prior, b.mech, *closed, b.metrics),
                exhaustive, 1e-12);
    EXPECT_NEAR(*ExpectedPrivacy(b.prior, b.mech, lp->attack, b.metrics),
                exhaustive, 1e-7);
  }
}

TEST(OptimalAttackTest, ClosedFormIsDeterministicWithLowestIndexTies) {
  // Uniform prior and a mechanism that reveals nothing: every guess ties.
  Prior prior = MakePrior({0.5, 0.5});
  Mechanism mech = MakeMechanism({{0.5, 0.5}, {0.5, 0.5}});
  MetricSet metrics = testing::TwoSecretMetrics();
  absl::StatusOr<Attack> attack =
      OptimalAttackClosedForm(prior, mech, metrics);
  ASSERT_TRUE(attack.ok());
  EXPECT_EQ((*attack)(0, 0), 1.0);
  EXPECT_EQ((*attack)(1, 0), 1.0);
}

TEST(OptimalAttackTest, DominatesBayesAndRandomAttacks) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    RandomInstance inst = MakeRandomInstance(5, 6, rng);
    Built b = Build(inst);
    absl::StatusOr<Attack> optimal =
        OptimalAttackClosedForm(b.prior, b.mech, b.metrics);
    ASSERT_TRUE(optimal.ok());
    const double best = *ExpectedPrivacy(b.prior, b.mech, *optimal, b.metrics);
    absl::StatusOr<BayesAttackResult> bayes = BayesAttack(b.prior, b.mech);
    ASSERT_TRUE(bayes.ok());
    EXPECT_LE(best, *ExpectedPrivacy(b.prior, b.mech, bayes->attack,
                                     b.metrics) + 1e-12);
    for (int k = 0; k < 5; ++k) {
      Matrix rows;
      for (int o = 0; o < 6; ++o) rows.push_back(RandomSimplexPoint(5, rng));
      Attack random = *Attack::Create(testing::Observables(6),
                                      testing::Secrets(5), ToTable(rows));
      EXPECT_LE(best,
                *ExpectedPrivacy(b.prior, b.mech, random, b.metrics) + 1e-12);
    }
  }
}

TEST(BayesAttackTest, ComputesPosteriorAndFlagsUnreachableObservables) {
  Prior prior = MakePrior({0.25, 0.75});
  Mechanism mech = MakeMechanism({{0.6, 0.4, 0.0}, {0.2, 0.8, 0.0}});
  absl::StatusOr<BayesAttackResult> bayes = BayesAttack(prior, mech);
  ASSERT_TRUE(bayes.ok());
  // P(o0) = 0.15 + 0.15; posterior (0.5, 0.5).
  EXPECT_NEAR(bayes->attack(0, 0), 0.5, 1e-15);
  // P(o1) = 0.1 + 0.6; posterior (1/7, 6/7).
  EXPECT_NEAR(bayes->attack(1, 1), 6.0 / 7.0, 1e-15);
  ASSERT_EQ(bayes->unreachable, std::vector<int>{2});
  EXPECT_NEAR(bayes->attack(2, 0), 0.5, 1e-15);
}

TEST(MinimaxAttackTest, ObjectivesMatchAchievedErrors) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    RandomInstance inst = MakeRandomInstance(4, 5, rng);
    Built b = Build(inst);
    absl::StatusOr<AttackResult> worst = MinimaxAttack(b.mech, b.metrics);
    absl::StatusOr<AttackResult> sum = MinimaxAttackSum(b.mech, b.metrics);
    absl::StatusOr<AttackResult> pairwise =
        MinimaxAttackPairwise(b.mech, b.metrics);
    ASSERT_TRUE(worst.ok() && sum.ok() && pairwise.ok());

    const Matrix worst_q = testing::ToMatrix(worst->attack);
    std::vector<double> e = PerSecretErrors(inst.mech, worst_q, inst.privacy);
    EXPECT_NEAR(*std::max_element(e.begin(), e.end()), worst->objective, 1e-7);

    // The sum variant decomposes per observable into an argmin.
    double sum_oracle = 0.0;
    for (int o = 0; o < 5; ++o) {
      double best = 1e300;
      for (int g = 0; g < 4; ++g) {
        double total = 0.0;
        for (int s = 0; s < 4; ++s) {
          total += inst.mech[s][o] * inst.privacy[g][s];
        }
        best = std::min(best, total);
      }
      sum_oracle += best;
    }
    EXPECT_NEAR(sum->objective, sum_oracle, 1e-7);

    // No attack beats the minimax bound, in particular not the one that
    // minimizes the sum.
    std::vector<double> e_sum = PerSecretErrors(
        inst.mech, testing::ToMatrix(sum->attack), inst.privacy);
    EXPECT_LE(worst->objective,
              *std::max_element(e_sum.begin(), e_sum.end()) + 1e-7);

    // Pairwise bound: max over (s, s_hat) of the attack's contribution.
    const Matrix pq = testing::ToMatrix(pairwise->attack);
    double pair_max = 0.0;
    for (int s = 0; s < 4; ++s) {
      for (int g = 0; g < 4; ++g) {
        double v = 0.0;
        for (int o = 0; o < 5; ++o) v += inst.mech[s][o] * pq[o][g];
        pair_max = std::max(pair_max, v * inst.privacy[g][s]);
      }
    }
    EXPECT_NEAR(pairwise->objective, pair_max, 1e-7);
  }
}

TEST(AttackTest, RejectsIncompatibleInputs) {
  Prior prior = MakePrior({0.2, 0.3, 0.5});
  Mechanism mech = MakeMechanism({{0.5, 0.5}, {0.5, 0.5}});
  EXPECT_FALSE(
      OptimalAttack(prior, mech, testing::TwoSecretMetrics()).ok());
  EXPECT_FALSE(BayesAttack(prior, mech).ok());
}

}  // namespace
}  // namespace privgame
