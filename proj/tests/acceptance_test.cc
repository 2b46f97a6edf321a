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

// Acceptance suite: prints one [PASS] or [FAIL] line per criterion and
// exits non-zero if any criterion fails. Diagnostic lines are indented.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "privgame/attack/attack.h"
#include "privgame/core/metrics.h"
#include "privgame/core/model.h"
#include "privgame/geo/grid.h"
#include "privgame/geo/trace.h"
#include "privgame/harness/experiments.h"
#include "privgame/mechanism/mechanism.h"
#include "tests/oracles.h"
#include "tests/test_util.h"

namespace privgame {
namespace {

using ::privgame::testing::ExhaustiveAttackError;
using ::privgame::testing::GridSearch2x2;
using ::privgame::testing::GridSearchResult;
using ::privgame::testing::Hamming;
using ::privgame::testing::MakeMechanism;
using ::privgame::testing::MakeMetrics;
using ::privgame::testing::MakePrior;
using ::privgame::testing::Matrix;
using ::privgame::testing::Median;
using ::privgame::testing::RandomInstance;
using ::privgame::testing::SatisfiesDifferential;
using ::privgame::testing::ToMatrix;

constexpr double kTol = 1e-6;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Collects failures of one criterion together with diagnostic notes.
class Check {
 public:
  void Expect(bool condition, const std::string& what) {
    if (condition) return;
    ++failures_;
    if (failures_ <= 10) Note(absl::StrCat("violation: ", what));
  }
  void Note(const std::string& text) { notes_.push_back(text); }
  bool passed() const { return failures_ == 0; }
  int failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  int failures_ = 0;
  std::vector<std::string> notes_;
};

// Mechanisms produced by the differential and joint builders, re-verified
// by criterion 8.
struct Produced {
  std::string origin;
  Mechanism mechanism;
  MetricSet metrics;
  double eps;
};
std::vector<Produced>& ProducedMechanisms() {
  static auto* produced = new std::vector<Produced>();
  return *produced;
}

void Record(const std::string& origin, const MechanismResult& result,
            const MetricSet& metrics, double eps) {
  ProducedMechanisms().push_back({origin, result.mechanism, metrics, eps});
}

std::string Num(double v) { return absl::StrFormat("%.9g", v); }

// ---------------------------------------------------------------------
// 1. Two-secret analytic suite.
Check TwoSecretSuite() {
  Check check;
  const std::vector<double> pi = {0.5, 0.5};
  const Matrix d = Hamming(2);
  const double eps = std::log(3.0);
  constexpr double kStep = 1e-3;

  // Oracle values first, by grid search over [[a, 1-a], [b, 1-b]].
  Stopwatch oracle_clock;
  const GridSearchResult dist_oracle =
      GridSearch2x2(pi, d, kStep, [&](const Matrix& m) {
        return ExhaustiveAttackError(pi, m, d) >= 0.5 - 1e-12;
      });
  const GridSearchResult diff_oracle =
      GridSearch2x2(pi, d, kStep, [&](const Matrix& m) {
        return SatisfiesDifferential(m, d, eps);
      });
  const GridSearchResult joint_oracle =
      GridSearch2x2(pi, d, kStep, [&](const Matrix& m) {
        return SatisfiesDifferential(m, d, eps) &&
               ExhaustiveAttackError(pi, m, d) >= 0.4 - 1e-12;
      });
  const double oracle_seconds = oracle_clock.Seconds();
  check.Expect(std::abs(dist_oracle.cost - 0.5) <= kTol,
               "grid search distortion cost " + Num(dist_oracle.cost));
  check.Expect(std::abs(diff_oracle.cost - 0.25) <= kTol,
               "grid search differential cost " + Num(diff_oracle.cost));
  check.Expect(std::abs(joint_oracle.cost - 0.4) <= kTol,
               "grid search joint cost " + Num(joint_oracle.cost));
  const double diff_oracle_privacy = ExhaustiveAttackError(
      pi, {{diff_oracle.a, 1 - diff_oracle.a}, {diff_oracle.b, 1 - diff_oracle.b}},
      d);

  Stopwatch clock;
  const Prior prior = MakePrior(pi);
  const MetricSet metrics = testing::TwoSecretMetrics();
  absl::StatusOr<MechanismResult> dist = OptimalDistortion(prior, metrics, 0.5);
  absl::StatusOr<MechanismResult> diff = OptimalDifferential(prior, metrics, eps);
  absl::StatusOr<MechanismResult> joint = OptimalJoint(prior, metrics, 0.4, eps);
  const double seconds = clock.Seconds();
  if (!dist.ok() || !diff.ok() || !joint.ok()) {
    check.Expect(false, "construction failed: " +
                            std::string(dist.status().message()) + " / " +
                            std::string(diff.status().message()) + " / " +
                            std::string(joint.status().message()));
    return check;
  }
  check.Expect(std::abs(dist->cost - dist_oracle.cost) <= kTol,
               "distortion cost " + Num(dist->cost));
  check.Expect(std::abs(diff->cost - diff_oracle.cost) <= kTol,
               "differential cost " + Num(diff->cost));
  check.Expect(std::abs(diff->privacy - diff_oracle_privacy) <= kTol &&
                   std::abs(diff->privacy - 0.25) <= kTol,
               "differential privacy " + Num(diff->privacy));
  check.Expect(std::abs(joint->cost - joint_oracle.cost) <= kTol,
               "joint cost " + Num(joint->cost));
  check.Expect(seconds < 1.0, "runtime " + Num(seconds) + " s");
  Record("two-secret differential", *diff, metrics, eps);
  Record("two-secret joint", *joint, metrics, eps);
  check.Note(absl::StrCat("costs: distortion ", Num(dist->cost),
                          ", differential ", Num(diff->cost), " (privacy ",
                          Num(diff->privacy), "), joint ", Num(joint->cost)));
  check.Note(absl::StrCat("grid-search oracle (step 1e-3): ",
                          Num(dist_oracle.cost), ", ", Num(diff_oracle.cost),
                          " (privacy ", Num(diff_oracle_privacy), "), ",
                          Num(joint_oracle.cost), " in ", Num(oracle_seconds),
                          " s"));
  check.Note(absl::StrCat("library runtime ", Num(seconds), " s"));
  return check;
}

// ---------------------------------------------------------------------
// 2 and 3 share 100 random instances.
std::vector<RandomInstance> RandomInstances() {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> size(2, 8);
  std::vector<RandomInstance> instances;
  for (int i = 0; i < 100; ++i) {
    const int ns = size(rng);
    const int no = size(rng);
    instances.push_back(testing::MakeRandomInstance(ns, no, rng));
  }
  return instances;
}

Check AttackEquivalence(const std::vector<RandomInstance>& instances) {
  Check check;
  Stopwatch clock;
  double worst = 0.0;
  for (size_t i = 0; i < instances.size(); ++i) {
    const RandomInstance& inst = instances[i];
    const Prior prior = MakePrior(inst.prior);
    const Mechanism mech = MakeMechanism(inst.mech);
    const MetricSet metrics = MakeMetrics(inst.cost, inst.privacy);
    absl::StatusOr<AttackResult> lp = OptimalAttack(prior, mech, metrics);
    absl::StatusOr<Attack> closed =
        OptimalAttackClosedForm(prior, mech, metrics);
    if (!lp.ok() || !closed.ok()) {
      check.Expect(false, absl::StrCat("instance ", i, ": ",
                                       lp.status().ToString(), " ",
                                       closed.status().ToString()));
      continue;
    }
    const double closed_value =
        *ExpectedPrivacy(prior, mech, *closed, metrics);
    const double gap = std::abs(lp->objective - closed_value);
    worst = std::max(worst, gap);
    check.Expect(gap <= kTol, absl::StrCat("instance ", i, ": LP ",
                                           Num(lp->objective), " vs ",
                                           Num(closed_value)));
  }
  const double seconds = clock.Seconds();
  check.Expect(seconds < 30.0, "runtime " + Num(seconds) + " s");
  check.Note(absl::StrCat(instances.size(), " instances, largest gap ",
                          Num(worst), ", runtime ", Num(seconds), " s"));
  return check;
}

Check Dominance(const std::vector<RandomInstance>& instances) {
  Check check;
  std::mt19937_64 rng(7);
  double tightest = 1e300;
  for (size_t i = 0; i < instances.size(); ++i) {
    const RandomInstance& inst = instances[i];
    const int ns = static_cast<int>(inst.prior.size());
    const int no = static_cast<int>(inst.mech[0].size());
    const Prior prior = MakePrior(inst.prior);
    const Mechanism mech = MakeMechanism(inst.mech);
    const MetricSet metrics = MakeMetrics(inst.cost, inst.privacy);
    absl::StatusOr<AttackResult> optimal = OptimalAttack(prior, mech, metrics);
    absl::StatusOr<BayesAttackResult> bayes = BayesAttack(prior, mech);
    if (!optimal.ok() || !bayes.ok()) {
      check.Expect(false, absl::StrCat("instance ", i, " failed"));
      continue;
    }
    const double best = optimal->objective;
    auto compare = [&](const Attack& other, const std::string& name) {
      const double value = *ExpectedPrivacy(prior, mech, other, metrics);
      tightest = std::min(tightest, value - best);
      check.Expect(best <= value + kTol,
                   absl::StrCat("instance ", i, ": optimal ", Num(best), " > ",
                                name, " ", Num(value)));
    };
    compare(bayes->attack, "Bayes");
    for (int k = 0; k < 20; ++k) {
      Matrix rows;
      for (int o = 0; o < no; ++o) {
        rows.push_back(testing::RandomSimplexPoint(ns, rng));
      }
      compare(*Attack::Create(testing::Observables(no), testing::Secrets(ns),
                              testing::ToTable(rows)),
              absl::StrCat("random attack ", k));
    }
  }
  check.Note(absl::StrCat(instances.size(),
                          " instances x (Bayes + 20 random attacks); smallest "
                          "margin (other - optimal) ",
                          Num(tightest)));
  return check;
}

// ---------------------------------------------------------------------
harness::ExperimentConfig GridConfig(int users) {
  harness::ExperimentConfig config;
  config.grid = harness::DefaultGrid();
  config.users = users;
  config.seed = 1;
  return config;
}

Check Scenario1() {
  Check check;
  Stopwatch clock;
  absl::StatusOr<harness::ExperimentResult<harness::TripleRow>> result =
      harness::RunScenario1(GridConfig(5));
  const double seconds = clock.Seconds();
  if (!result.ok()) {
    check.Expect(false, result.status().ToString());
    return check;
  }
  double worst_cost_gap = 0.0;
  double worst_ap_slack = 1e300;
  for (const harness::TripleRow& row : result->rows) {
    const std::string where = absl::StrCat(row.user, " eps ", Num(row.eps));
    bool all_ok = true;
    for (const harness::Evaluation& e : row.mech) {
      check.Expect(e.ok, where + ": " + e.status);
      all_ok &= e.ok;
    }
    if (!all_ok || !row.dm.has_value()) continue;
    const double gap = std::abs(row.mech[harness::kJointMech].cost -
                                row.mech[harness::kDifferentialMech].cost);
    worst_cost_gap = std::max(worst_cost_gap, gap);
    check.Expect(gap <= kTol, where + ": joint/differential cost gap " +
                                  Num(gap));
    const double slack =
        row.mech[harness::kDistortionMech].ap_optimal - *row.dm;
    worst_ap_slack = std::min(worst_ap_slack, slack);
    check.Expect(slack >= -kTol,
                 where + ": AP(distortion) below d_m by " + Num(-slack));
  }
  check.Expect(result->rows.size() == 30, "expected 30 rows");
  check.Expect(seconds < 600.0, "runtime " + Num(seconds) + " s");
  check.Note(absl::StrCat(result->rows.size(),
                          " rows (5 users x 6 eps); largest |cost(joint) - "
                          "cost(differential)| ",
                          Num(worst_cost_gap), "; smallest AP(distortion) - "
                          "d_m ",
                          Num(worst_ap_slack), "; runtime ", Num(seconds),
                          " s"));
  return check;
}

Check Scenario3() {
  Check check;
  Stopwatch clock;
  absl::StatusOr<harness::ExperimentResult<harness::SweepRow>> result =
      harness::RunScenario3(GridConfig(2));
  const double seconds = clock.Seconds();
  if (!result.ok()) {
    check.Expect(false, result.status().ToString());
    return check;
  }
  std::vector<double> gaps;
  for (const harness::SweepRow& row : result->rows) {
    const std::string where = absl::StrCat(row.user, " eps ", Num(row.eps),
                                           " d_m ", Num(row.dm));
    bool all_ok = true;
    for (const harness::Evaluation& e : row.mech) {
      check.Expect(e.ok, where + ": " + e.status);
      all_ok &= e.ok;
    }
    if (!all_ok) continue;
    const harness::Evaluation& diff = row.mech[harness::kDifferentialMech];
    const harness::Evaluation& dist = row.mech[harness::kDistortionMech];
    const harness::Evaluation& joint = row.mech[harness::kJointMech];
    check.Expect(
        joint.ap_optimal >= std::max(diff.ap_optimal, dist.ap_optimal) - kTol,
        absl::StrCat(where, ": joint privacy ", Num(joint.ap_optimal),
                     " below the component maximum (differential ",
                     Num(diff.ap_optimal), ", distortion ", Num(dist.ap_optimal),
                     "; costs joint ", Num(joint.cost), ", differential ",
                     Num(diff.cost), ")"));
    check.Expect(joint.cost >= std::max(diff.cost, dist.cost) - kTol,
                 absl::StrCat(where, ": joint cost ", Num(joint.cost),
                     " below the component maximum"));
    if (row.equality_gap.has_value()) gaps.push_back(*row.equality_gap);
  }
  const double median = Median(gaps);
  const double largest =
      gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
  check.Note(absl::StrCat(result->rows.size(),
                          " cells (2 users); relative equality gap "
                          "(AP(joint) - max) / max: median ",
                          Num(median), ", largest ", Num(largest),
                          "; runtime ", Num(seconds), " s"));
  check.Note(absl::StrCat("soft check median gap <= 2%: ",
                          median <= 0.02 ? "met" : "NOT met"));
  return check;
}

Check Monotonicity() {
  Check check;
  harness::ExperimentConfig config = GridConfig(1);
  absl::StatusOr<std::vector<harness::UserInstance>> users =
      harness::MakeUsers(config);
  if (!users.ok()) {
    check.Expect(false, users.status().ToString());
    return check;
  }
  const Prior& prior = (*users)[0].prior;
  const MetricSet metrics = geo::LocationMetrics(config.grid);
  absl::StatusOr<double> dmax = MaxDistortion(prior, metrics);
  if (!dmax.ok()) {
    check.Expect(false, dmax.status().ToString());
    return check;
  }
  std::vector<std::string> dm_costs;
  double previous = -1e300;
  for (int i = 0; i <= 10; ++i) {
    const double d_m = i == 10 ? *dmax : 0.1 * i * *dmax;
    absl::StatusOr<MechanismResult> r = OptimalDistortion(prior, metrics, d_m);
    if (!r.ok()) {
      check.Expect(false, "d_m " + Num(d_m) + ": " + r.status().ToString());
      continue;
    }
    check.Expect(r->cost >= previous - kTol,
                 absl::StrCat("cost drops from ", Num(previous), " to ",
                              Num(r->cost), " at d_m ", Num(d_m)));
    previous = r->cost;
    dm_costs.push_back(absl::StrFormat("%.4f", r->cost));
  }
  std::vector<std::string> eps_costs;
  previous = 1e300;
  for (int i = 1; i <= 20; ++i) {
    const double eps = 0.1 * i;
    absl::StatusOr<MechanismResult> r =
        OptimalDifferential(prior, metrics, eps);
    if (!r.ok()) {
      check.Expect(false, "eps " + Num(eps) + ": " + r.status().ToString());
      continue;
    }
    Record(absl::StrCat("ladder differential eps ", Num(eps)), *r, metrics,
           eps);
    check.Expect(r->cost <= previous + kTol,
                 absl::StrCat("cost rises from ", Num(previous), " to ",
                              Num(r->cost), " at eps ", Num(eps)));
    previous = r->cost;
    eps_costs.push_back(absl::StrFormat("%.4f", r->cost));
  }
  check.Note(absl::StrCat("user0 on the 8x6 grid, d_m^max ", Num(*dmax)));
  check.Note("distortion cost over d_m = 0, 0.1, ..., 1.0 x d_m^max: " +
             absl::StrJoin(dm_costs, " "));
  check.Note("differential cost over eps = 0.1, ..., 2.0: " +
             absl::StrJoin(eps_costs, " "));
  return check;
}

Check ApproxSweep() {
  Check check;
  harness::ExperimentConfig config;
  config.grid = *geo::Grid::Create(6, 6, 4.5, 4.5);
  config.users = 5;
  config.seed = 1;
  const double diameter = config.grid.Diameter();
  Stopwatch clock;
  absl::StatusOr<harness::ExperimentResult<harness::ApproxRow>> result =
      harness::RunApproxSweep(config);
  const double seconds = clock.Seconds();
  if (!result.ok()) {
    check.Expect(false, result.status().ToString());
    return check;
  }
  std::map<double, std::vector<double>> errors;
  std::map<double, std::vector<double>> times;
  std::map<double, int> constraints;
  for (const harness::ApproxRow& row : result->rows) {
    const std::string where =
        absl::StrCat(row.user, " radius ", Num(row.radius));
    check.Expect(row.ok, where + ": " + row.status);
    if (!row.ok) continue;
    errors[row.radius].push_back(row.error);
    times[row.radius].push_back(row.seconds_pruned);
    constraints[row.radius] += row.constraints_pruned;
    if (std::abs(row.radius - diameter) <= 1e-9) {
      check.Expect(row.error <= kTol,
                   where + ": error at the diameter " + Num(row.error));
    }
  }
  check.Expect(!errors.empty() &&
                   std::abs(errors.rbegin()->first - diameter) <= 1e-9,
               "ladder does not end at the diameter");
  double previous_error = 1e300;
  double previous_time = -1.0;
  std::vector<std::string> summary;
  for (const auto& [radius, values] : errors) {
    const double error = Median(values);
    const double time = Median(times[radius]);
    check.Expect(error <= previous_error + kTol,
                 absl::StrCat("median error rises to ", Num(error),
                              " at radius ", Num(radius)));
    check.Expect(time >= previous_time,
                 absl::StrCat("median time falls from ", Num(previous_time),
                              " to ", Num(time), " at radius ", Num(radius)));
    previous_error = error;
    previous_time = time;
    summary.push_back(absl::StrFormat(
        "R=%.3f km: median error %.3g, median time %.3f s, constraints %d",
        radius, error, time, constraints[radius] / config.users));
  }
  check.Expect(seconds < 600.0, "runtime " + Num(seconds) + " s");
  for (const std::string& line : summary) check.Note(line);
  check.Note(absl::StrCat("6x6 grid over 4.5x4.5 km, 5 users, eps 0.5, "
                          "diameter ",
                          Num(diameter), " km; runtime ", Num(seconds), " s"));
  return check;
}

Check DifferentialVerifier(int harness_mechanisms) {
  Check check;
  int verified = 0;
  for (const Produced& p : ProducedMechanisms()) {
    absl::StatusOr<DifferentialReport> report =
        VerifyDifferential(p.mechanism, p.metrics, p.eps);
    check.Expect(report.ok() && report->passed,
                 p.origin + (report.ok() ? ": margin " + Num(report->margin)
                                         : ": " + report.status().ToString()));
    ++verified;
  }
  // The identity fails for every finite budget on two or more secrets.
  int identity_checks = 0;
  for (int n : {2, 3, 48}) {
    const MetricSet metrics =
        n == 48 ? geo::LocationMetrics(harness::DefaultGrid())
                : MakeMetrics(Hamming(n), Hamming(n));
    const Mechanism identity = Mechanism::Identity(testing::Secrets(n));
    for (int power = -6; power <= 6; ++power) {
      const double eps = std::pow(10.0, power);
      absl::StatusOr<DifferentialReport> report =
          VerifyDifferential(identity, metrics, eps);
      check.Expect(report.ok() && !report->passed,
                   absl::StrCat("identity on ", n, " secrets passes at eps ",
                                Num(eps)));
      ++identity_checks;
    }
  }
  check.Note(absl::StrCat(verified,
                          " mechanisms re-verified here, plus ",
                          harness_mechanisms,
                          " differential/joint mechanisms verified by the "
                          "experiment runner"));
  check.Note(absl::StrCat("identity rejected in ", identity_checks,
                          " checks (2, 3 and 48 secrets; eps = 1e-6..1e6)"));
  return check;
}

int Report(int number, const std::string& title, const Check& check) {
  std::printf("[%s] %d. %s\n", check.passed() ? "PASS" : "FAIL", number,
              title.c_str());
  for (const std::string& note : check.notes()) {
    std::printf("       %s\n", note.c_str());
  }
  std::fflush(stdout);
  return check.passed() ? 0 : 1;
}

}  // namespace
}  // namespace privgame

int main() {
  using namespace privgame;  // NOLINT
  int failed = 0;
  failed += Report(1, "two-secret analytic suite", TwoSecretSuite());
  const std::vector<testing::RandomInstance> instances = RandomInstances();
  failed += Report(2, "optimal attack LP equals closed-form argmin attack",
                   AttackEquivalence(instances));
  failed += Report(3, "optimal attack dominates Bayes and random attacks",
                   Dominance(instances));

  // Mechanisms the experiment runner verified (it re-runs the verifier on
  // every differential and joint mechanism it builds).
  int harness_mechanisms = 0;
  failed += Report(4, "scenario 1: joint equals differential at d_m = AP(p_eps)",
                   [&] {
                     Check c = Scenario1();
                     harness_mechanisms += 2 * 30;
                     return c;
                   }());
  failed += Report(5, "scenario 3: joint dominates its components", [&] {
    Check c = Scenario3();
    return c;
  }());
  failed += Report(6, "monotonicity ladders", Monotonicity());
  failed += Report(7, "approximation sweep on a 6x6 grid", ApproxSweep());
  failed += Report(8, "differential verifier", DifferentialVerifier(
                                                   harness_mechanisms));
  std::printf("%d of 8 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
