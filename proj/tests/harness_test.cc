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
#include <cmath>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "privgame/common/errors.h"
#include "privgame/harness/csv_writer.h"
#include "privgame/harness/experiments.h"

namespace privgame::harness {
namespace {

constexpr double kTol = 1e-6;

ExperimentConfig SmallConfig() {
  ExperimentConfig config;
  config.grid = *geo::Grid::Create(3, 3, 3.0, 3.0);
  config.users = 2;
  config.seed = 5;
  config.trace_length = 200;
  config.eps_ladder = {0.5, 1.0};
  return config;
}

TEST(ParseLadderTest, ExpandsRangesAndSingleValues) {
  absl::StatusOr<std::vector<double>> ladder = ParseLadder("0.15:0.9:0.15");
  ASSERT_TRUE(ladder.ok());
  EXPECT_EQ(*ladder,
            (std::vector<double>{0.15, 0.3, 0.45, 0.6, 0.75, 0.9}));
  EXPECT_EQ(*ParseLadder("2.5"), std::vector<double>{2.5});
  EXPECT_EQ(*ParseLadder("1:1:0.5"), std::vector<double>{1.0});
  EXPECT_EQ(ErrorKindOf(ParseLadder("a:b:c").status()), ErrorKind::kParse);
  EXPECT_EQ(ErrorKindOf(ParseLadder("1:2").status()), ErrorKind::kParse);
  EXPECT_FALSE(ParseLadder("1:0:0.1").ok());
  EXPECT_FALSE(ParseLadder("0:1:0").ok());
}

TEST(CsvTableTest, WritesMetadataColumnNotesAndEscapedCells) {
  CsvTable table({{"name", "a label", false}, {"seconds", "solve time", true}});
  table.AddMetadata("seed", "3");
  table.AddRow({"plain", "1.5"});
  table.AddRow({"a,b \"c\"", ""});
  EXPECT_EQ(table.ColumnIndex("seconds"), 1);
  EXPECT_EQ(table.ColumnIndex("missing"), -1);
  EXPECT_EQ(table.ToString(),
            "# seed: 3\n"
            "# column name: a label\n"
            "# column seconds: solve time (wall-clock, varies between runs)\n"
            "name,seconds\n"
            "plain,1.5\n"
            "\"a,b \"\"c\"\"\",\n");
  EXPECT_EQ(FormatNumber(std::nullopt), "");
  EXPECT_EQ(FormatNumber(0.1), "0.1");
  EXPECT_EQ(EscapeCsvCell("x\ny"), "\"x\ny\"");
}

TEST(UsersTest, SeededAndDistinct) {
  ExperimentConfig config = SmallConfig();
  absl::StatusOr<std::vector<UserInstance>> a = MakeUsers(config);
  absl::StatusOr<std::vector<UserInstance>> b = MakeUsers(config);
  ASSERT_TRUE(a.ok() && b.ok());
  ASSERT_EQ(a->size(), 2u);
  EXPECT_EQ((*a)[0].id, "user0");
  EXPECT_EQ((*a)[0].prior.probs(), (*b)[0].prior.probs());
  EXPECT_NE((*a)[0].prior.probs(), (*a)[1].prior.probs());
}

TEST(ScenarioTest, JointEqualsDifferentialAtItsOwnPrivacy) {
  absl::StatusOr<ExperimentResult<TripleRow>> result =
      RunScenario1(SmallConfig());
  ASSERT_TRUE(result.ok()) << result.status();
  ASSERT_EQ(result->rows.size(), 4u);
  for (const TripleRow& row : result->rows) {
    for (const Evaluation& e : row.mech) ASSERT_TRUE(e.ok) << e.status;
    ASSERT_TRUE(row.dm.has_value());
    EXPECT_NEAR(*row.dm, row.mech[kDifferentialMech].ap_optimal, 1e-12);
    EXPECT_NEAR(row.mech[kJointMech].cost, row.mech[kDifferentialMech].cost,
                kTol);
    EXPECT_GE(row.mech[kDistortionMech].ap_optimal, *row.dm - kTol);
    // The optimal attack dominates the Bayesian one.
    for (const Evaluation& e : row.mech) {
      EXPECT_LE(e.ap_optimal, e.ap_bayes + kTol);
    }
  }
  EXPECT_EQ(result->table.rows().size(), 4u);
}

TEST(ScenarioTest, UnreachableLevelsAreRecordedNotFatal) {
  ExperimentConfig config = SmallConfig();
  config.users = 1;
  config.eps_ladder = {2.0};
  config.dm_offsets = {0.01, 100.0};
  absl::StatusOr<ExperimentResult<TripleRow>> result = RunScenario2(config);
  ASSERT_TRUE(result.ok()) << result.status();
  ASSERT_EQ(result->rows.size(), 2u);
  const TripleRow& reachable = result->rows[0];
  const TripleRow& unreachable = result->rows[1];
  // The uniform mechanism meets any budget at d_m^max, so every level up
  // to d_m^max admits a joint mechanism.
  ASSERT_LE(*reachable.dm, reachable.dm_max);
  EXPECT_TRUE(reachable.mech[kJointMech].ok) << reachable.mech[kJointMech].status;
  EXPECT_GE(reachable.mech[kJointMech].cost,
            std::max(reachable.mech[kDifferentialMech].cost,
                     reachable.mech[kDistortionMech].cost) -
                kTol);
  EXPECT_FALSE(unreachable.mech[kDistortionMech].ok);
  EXPECT_NE(unreachable.mech[kDistortionMech].status.find("Infeasible"),
            std::string::npos);
  EXPECT_FALSE(unreachable.mech[kJointMech].ok);
  EXPECT_TRUE(unreachable.mech[kDifferentialMech].ok);
}

TEST(ScenarioTest, JointDominatesComponentsAcrossTheSweep) {
  ExperimentConfig config = SmallConfig();
  config.users = 1;
  config.eps_ladder = {0.4, 1.0};
  absl::StatusOr<ExperimentResult<SweepRow>> result = RunScenario3(config);
  ASSERT_TRUE(result.ok()) << result.status();
  ASSERT_FALSE(result->rows.empty());
  int complete = 0;
  double previous = -1.0;
  for (const SweepRow& row : result->rows) {
    if (!row.mech[kJointMech].ok) continue;
    ++complete;
    const Evaluation& diff = row.mech[kDifferentialMech];
    const Evaluation& dist = row.mech[kDistortionMech];
    const Evaluation& joint = row.mech[kJointMech];
    EXPECT_GE(joint.ap_optimal,
              std::max(diff.ap_optimal, dist.ap_optimal) - kTol);
    EXPECT_GE(joint.cost, std::max(diff.cost, dist.cost) - kTol);
    ASSERT_TRUE(row.equality_gap.has_value());
    EXPECT_GE(*row.equality_gap, -kTol);
    // Sorted by the joint mechanism's privacy.
    EXPECT_GE(joint.ap_optimal, previous);
    previous = joint.ap_optimal;
    EXPECT_LE(row.dm, row.dm_max + kTol);
  }
  EXPECT_GT(complete, 0);
}

TEST(PriorMismatchTest, UnitBetaChangesNothing) {
  ExperimentConfig config = SmallConfig();
  config.users = 1;
  config.eps_ladder = {0.6};
  config.sharpen_betas = {1.0, 8.0};
  absl::StatusOr<ExperimentResult<MismatchRow>> result =
      RunPriorMismatch(config);
  ASSERT_TRUE(result.ok()) << result.status();
  ASSERT_EQ(result->rows.size(), 2u);
  const MismatchRow& same = result->rows[0];
  ASSERT_TRUE(same.ok) << same.status;
  for (int m = 0; m < 2; ++m) {
    EXPECT_NEAR(same.ap_naive[m], same.ap_prior[m], 1e-9);
    EXPECT_NEAR(same.ap_sharpened[m], same.ap_prior[m], 1e-9);
  }
  const MismatchRow& sharp = result->rows[1];
  ASSERT_TRUE(sharp.ok) << sharp.status;
  EXPECT_LT(sharp.entropy_sharpened, sharp.entropy_prior);
  // The better informed adversary's own optimal attack beats the naive one.
  for (int m = 0; m < 2; ++m) {
    EXPECT_LE(sharp.ap_sharpened[m], sharp.ap_naive[m] + 1e-9);
  }
}

TEST(ApproxSweepTest, DiameterRadiusIsExact) {
  ExperimentConfig config = SmallConfig();
  config.users = 1;
  config.eps_ladder = {0.5};
  const double diameter = config.grid.Diameter();
  config.radius_ladder = {0.5 * diameter, diameter};
  absl::StatusOr<ExperimentResult<ApproxRow>> result = RunApproxSweep(config);
  ASSERT_TRUE(result.ok()) << result.status();
  ASSERT_EQ(result->rows.size(), 2u);
  const ApproxRow& half = result->rows[0];
  const ApproxRow& full = result->rows[1];
  ASSERT_TRUE(full.ok) << full.status;
  EXPECT_LE(full.error, kTol);
  EXPECT_EQ(full.constraints_pruned, full.constraints_exact);
  if (half.ok) EXPECT_LT(half.constraints_pruned, half.constraints_exact);
}

TEST(DeterminismTest, OutputsDifferOnlyInTimingColumns) {
  ExperimentConfig config = SmallConfig();
  config.users = 1;
  absl::StatusOr<CsvTable> a = RunExperiment("scenario1", config);
  absl::StatusOr<CsvTable> b = RunExperiment("scenario1", config);
  ASSERT_TRUE(a.ok() && b.ok());
  ASSERT_EQ(a->rows().size(), b->rows().size());
  for (size_t r = 0; r < a->rows().size(); ++r) {
    for (size_t c = 0; c < a->columns().size(); ++c) {
      if (a->columns()[c].timing) continue;
      EXPECT_EQ(a->rows()[r][c], b->rows()[r][c])
          << "row " << r << " column " << a->columns()[c].name;
    }
  }
  EXPECT_EQ(ErrorKindOf(RunExperiment("scenario9", config).status()),
            ErrorKind::kInvalidArgument);
}

}  // namespace
}  // namespace privgame::harness
