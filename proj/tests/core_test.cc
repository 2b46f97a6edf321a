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

#include <cmath>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "privgame/common/errors.h"
#include "privgame/core/json_io.h"
#include "privgame/core/label_space.h"
#include "privgame/core/metrics.h"
#include "privgame/core/model.h"
#include "tests/oracles.h"
#include "tests/test_util.h"

namespace privgame {
namespace {

using ::privgame::testing::MakeMechanism;
using ::privgame::testing::MakeMetrics;
using ::privgame::testing::MakePrior;
using ::privgame::testing::Matrix;
using ::privgame::testing::Secrets;
using ::privgame::testing::ToTable;

TEST(LabelSpaceTest, IndexesLabelsAndRejectsDuplicates) {
  absl::StatusOr<LabelSpace> space =
      LabelSpace::Create({"home", "work", "gym"}, Role::kSecrets);
  ASSERT_TRUE(space.ok());
  EXPECT_EQ(space->size(), 3);
  EXPECT_EQ(*space->IndexOf("work"), 1);
  EXPECT_EQ(ErrorKindOf(space->IndexOf("pub").status()),
            ErrorKind::kUnknownLabel);
  EXPECT_EQ(ErrorKindOf(
                LabelSpace::Create({"a", "a"}, Role::kSecrets).status()),
            ErrorKind::kInvalidArgument);
  EXPECT_FALSE(LabelSpace::Create({}, Role::kSecrets).ok());

  LabelSpace observables = space->WithRole(Role::kObservables);
  EXPECT_EQ(observables.role(), Role::kObservables);
  EXPECT_TRUE(observables.SameLabels(*space));
  EXPECT_FALSE(LabelSpace::Indexed(3, Role::kSecrets).SameLabels(*space));
}

TEST(PriorTest, ValidatesDistribution) {
  EXPECT_TRUE(Prior::Create(Secrets(2), {0.25, 0.75}).ok());
  EXPECT_EQ(ErrorKindOf(Prior::Create(Secrets(2), {0.5, 0.6}).status()),
            ErrorKind::kInvalidArgument);
  EXPECT_FALSE(Prior::Create(Secrets(2), {-0.1, 1.1}).ok());
  EXPECT_EQ(ErrorKindOf(Prior::Create(Secrets(3), {0.5, 0.5}).status()),
            ErrorKind::kDimensionMismatch);
  EXPECT_NEAR(Prior::Uniform(Secrets(4)).Entropy(), std::log(4.0), 1e-12);
}

TEST(MechanismTest, RejectsRowsOffByMoreThanTolerance) {
  const Matrix good = {{0.5, 0.5}, {0.2, 0.8}};
  EXPECT_TRUE(Mechanism::Create(Secrets(2), testing::Observables(2),
                                ToTable(good))
                  .ok());
  const Matrix off = {{0.5, 0.5 + 1e-5}, {0.2, 0.8}};
  EXPECT_EQ(ErrorKindOf(Mechanism::Create(Secrets(2), testing::Observables(2),
                                          ToTable(off))
                            .status()),
            ErrorKind::kInvalidArgument);
  const Matrix negative = {{1.2, -0.2}, {0.2, 0.8}};
  EXPECT_FALSE(Mechanism::Create(Secrets(2), testing::Observables(2),
                                 ToTable(negative))
                   .ok());
  EXPECT_EQ(ErrorKindOf(Mechanism::Create(Secrets(3), testing::Observables(2),
                                          ToTable(good))
                            .status()),
            ErrorKind::kDimensionMismatch);
}

TEST(MechanismTest, NormalizationProjectsOntoStochasticMatrices) {
  const Matrix raw = {{2.0, -1e-9, 2.0}, {0.0, 0.0, 0.0}};
  absl::StatusOr<Mechanism> mech = Mechanism::CreateNormalized(
      Secrets(2), testing::Observables(3), ToTable(raw));
  ASSERT_TRUE(mech.ok());
  EXPECT_DOUBLE_EQ((*mech)(0, 0), 0.5);
  EXPECT_DOUBLE_EQ((*mech)(0, 1), 0.0);
  EXPECT_NEAR((*mech)(1, 2), 1.0 / 3.0, 1e-15);
  EXPECT_LE(mech->MaxRowSumError(), 1e-15);
  EXPECT_EQ(mech->MaxNegativity(), 0.0);
}

TEST(MetricSetTest, DefaultsGroundToPrivacyWhenLabelsMatch) {
  const Matrix d = {{0, 1}, {1, 0}};
  MetricSet metrics = MakeMetrics(d, d);
  ASSERT_TRUE(metrics.ground().has_value());
  EXPECT_EQ((*metrics.ground())(0, 1), 1.0);

  absl::StatusOr<MetricSet> bad = MetricSet::Create(
      Secrets(2), testing::Observables(2), ToTable({{0, 1}}), ToTable(d),
      ToTable(d));
  EXPECT_EQ(ErrorKindOf(bad.status()), ErrorKind::kDimensionMismatch);
  absl::StatusOr<MetricSet> negative = MetricSet::Create(
      Secrets(2), testing::Observables(2), ToTable(d),
      ToTable({{0, -1}, {1, 0}}), ToTable(d));
  EXPECT_FALSE(negative.ok());
}

// Hand-computed values on pi = (0.25, 0.75), p = [[0.6, 0.4], [0.1, 0.9]].
class HandInstance : public ::testing::Test {
 protected:
  const Matrix cost_ = {{0, 2}, {3, 0}};
  const Matrix privacy_ = {{0, 1}, {1, 0}};
  Prior prior_ = MakePrior({0.25, 0.75});
  Mechanism mech_ = MakeMechanism({{0.6, 0.4}, {0.1, 0.9}});
  MetricSet metrics_ = MakeMetrics(cost_, privacy_);
  // Guess s0 after o0, s1 after o1.
  Attack attack_ = *Attack::Create(testing::Observables(2), Secrets(2),
                                   ToTable({{1, 0}, {0, 1}}));
};

TEST_F(HandInstance, ExpectedAndWorstCaseCost) {
  // 0.25 * 0.4 * 3 + 0.75 * 0.1 * 2 = 0.3 + 0.15.
  EXPECT_NEAR(*ExpectedCost(prior_, mech_, metrics_), 0.45, 1e-15);
  // Worst secret: s0 with 0.4 * 3 = 1.2 versus s1 with 0.1 * 2 = 0.2.
  EXPECT_NEAR(*WorstCaseCost(mech_, metrics_), 1.2, 1e-15);
}

TEST_F(HandInstance, PrivacyMetrics) {
  // Error for s0: p(o1|s0) = 0.4; for s1: p(o0|s1) = 0.1.
  EXPECT_NEAR(*ConditionalError(mech_, attack_, metrics_, 0), 0.4, 1e-15);
  EXPECT_NEAR(*PrivacyOfSecret(mech_, attack_, metrics_, "1"), 0.1, 1e-15);
  EXPECT_NEAR(*ExpectedPrivacy(prior_, mech_, attack_, metrics_),
              0.25 * 0.4 + 0.75 * 0.1, 1e-15);
  EXPECT_EQ(ErrorKindOf(
                PrivacyOfSecret(mech_, attack_, metrics_, "nope").status()),
            ErrorKind::kUnknownLabel);
}

TEST_F(HandInstance, VerifyDifferentialReportsWorstTriple) {
  // Largest ratio is p(o0|s0) / p(o0|s1) = 6, so eps = ln 6 is tight.
  absl::StatusOr<DifferentialReport> tight =
      VerifyDifferential(mech_, metrics_, std::log(6.0));
  ASSERT_TRUE(tight.ok());
  EXPECT_TRUE(tight->passed);
  EXPECT_NEAR(tight->margin, 0.0, 1e-12);
  absl::StatusOr<DifferentialReport> loose =
      VerifyDifferential(mech_, metrics_, std::log(5.0));
  ASSERT_TRUE(loose.ok());
  EXPECT_FALSE(loose->passed);
  EXPECT_EQ(loose->s, 0);
  EXPECT_EQ(loose->s_prime, 1);
  EXPECT_EQ(loose->o, 0);
  EXPECT_NEAR(loose->margin, 0.6 - 5.0 * 0.1, 1e-12);
  EXPECT_FALSE(DescribeReport(*loose, mech_).empty());
  // A threshold below every distance exempts all pairs.
  absl::StatusOr<DifferentialReport> exempt =
      VerifyDifferential(mech_, metrics_, 0.01, /*d_eps_m=*/0.5);
  ASSERT_TRUE(exempt.ok());
  EXPECT_TRUE(exempt->passed);
  EXPECT_EQ(exempt->pairs_checked, 0);
}

TEST(VerifyDifferentialTest, IdentityFailsForEveryFiniteBudget) {
  const Matrix d = testing::Hamming(3);
  MetricSet metrics = MakeMetrics(d, d);
  Mechanism identity = Mechanism::Identity(Secrets(3));
  for (double eps : {1e-6, 1e-2, 1.0, 10.0, 1e3, 1e6}) {
    absl::StatusOr<DifferentialReport> report =
        VerifyDifferential(identity, metrics, eps);
    ASSERT_TRUE(report.ok());
    EXPECT_FALSE(report->passed) << "eps " << eps;
  }
  // The uniform mechanism satisfies any budget.
  absl::StatusOr<DifferentialReport> uniform = VerifyDifferential(
      Mechanism::Uniform(Secrets(3), testing::Observables(3)), metrics, 0.0);
  ASSERT_TRUE(uniform.ok());
  EXPECT_TRUE(uniform->passed);
  EXPECT_FALSE(VerifyDifferential(identity, metrics, -1.0).ok());
}

TEST(JsonTest, RoundTripsAllDocuments) {
  Prior prior = MakePrior({0.2, 0.3, 0.5});
  absl::StatusOr<Prior> prior_back = ParsePriorJson(PriorToJson(prior));
  ASSERT_TRUE(prior_back.ok());
  EXPECT_EQ(prior_back->probs(), prior.probs());

  Mechanism mech =
      MakeMechanism({{0.1, 0.9}, {1.0 / 3.0, 2.0 / 3.0}, {0.5, 0.5}});
  absl::StatusOr<Mechanism> mech_back =
      ParseMechanismJson(MechanismToJson(mech));
  ASSERT_TRUE(mech_back.ok());
  EXPECT_EQ(mech_back->rows(), mech.rows());

  const Matrix d = testing::Hamming(3);
  MetricSet metrics = MakeMetrics({{0, 1, 2}, {2, 1, 0}}, d);
  absl::StatusOr<MetricSet> metrics_back =
      ParseMetricSetJson(MetricSetToJson(metrics));
  ASSERT_TRUE(metrics_back.ok()) << metrics_back.status();
  EXPECT_EQ(metrics_back->cost(), metrics.cost());
  EXPECT_EQ(metrics_back->privacy(), metrics.privacy());
  EXPECT_EQ(metrics_back->disting(), metrics.disting());

  Attack attack = Attack::Uniform(testing::Observables(2), Secrets(3));
  absl::StatusOr<Attack> attack_back = ParseAttackJson(AttackToJson(attack));
  ASSERT_TRUE(attack_back.ok());
  EXPECT_EQ(attack_back->rows(), attack.rows());
}

TEST(JsonTest, RejectsMalformedDocuments) {
  EXPECT_EQ(ErrorKindOf(ParsePriorJson("{").status()), ErrorKind::kParse);
  EXPECT_EQ(ErrorKindOf(ParsePriorJson("[1]").status()), ErrorKind::kParse);
  EXPECT_FALSE(ParsePriorJson(R"({"secrets": ["a"]})").ok());
  // Row sums may be off by at most 1e-6 in files.
  EXPECT_TRUE(ParseMechanismJson(
                  R"({"secrets":["a"],"observables":["x","y"],)"
                  R"("rows":[[0.5,0.5000005]]})")
                  .ok());
  EXPECT_FALSE(ParseMechanismJson(
                   R"({"secrets":["a"],"observables":["x","y"],)"
                   R"("rows":[[0.5,0.500002]]})")
                   .ok());
  EXPECT_EQ(ErrorKindOf(ParseMechanismJson(
                            R"({"secrets":["a"],"observables":["x","y"],)"
                            R"("rows":[[1.0]]})")
                            .status()),
            ErrorKind::kDimensionMismatch);
}

TEST(JsonTest, FileHelpersReportIoErrors) {
  EXPECT_EQ(ErrorKindOf(ReadTextFile("/nonexistent/dir/x.json").status()),
            ErrorKind::kIo);
  const std::string path = ::testing::TempDir() + "/privgame_core_test.txt";
  ASSERT_TRUE(WriteTextFile(path, "hello").ok());
  EXPECT_EQ(*ReadTextFile(path), "hello");
}

}  // namespace
}  // namespace privgame
