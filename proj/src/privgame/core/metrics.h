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

#ifndef PRIVGAME_CORE_METRICS_H_
#define PRIVGAME_CORE_METRICS_H_

#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "privgame/core/model.h"

namespace privgame {

// Tolerance of the subtraction-form differential check.
inline constexpr double kDifferentialTolerance = 1e-7;

// sum_s pi(s) sum_o p(o|s) c(o,s).
absl::StatusOr<double> ExpectedCost(const Prior& prior, const Mechanism& mech,
                                    const MetricSet& metrics);

// max_s sum_o p(o|s) c(o,s).
absl::StatusOr<double> WorstCaseCost(const Mechanism& mech,
                                     const MetricSet& metrics);

// sum_o p(o|s) sum_s_hat q(s_hat|o) d(s_hat,s) for secret index `s`.
absl::StatusOr<double> PrivacyOfSecret(const Mechanism& mech,
                                       const Attack& attack,
                                       const MetricSet& metrics, int s);
absl::StatusOr<double> PrivacyOfSecret(const Mechanism& mech,
                                       const Attack& attack,
                                       const MetricSet& metrics,
                                       std::string_view secret_label);

// pi-weighted average of PrivacyOfSecret: the adversary's expected error.
absl::StatusOr<double> ExpectedPrivacy(const Prior& prior,
                                       const Mechanism& mech,
                                       const Attack& attack,
                                       const MetricSet& metrics);

// The adversary-side name of PrivacyOfSecret: the conditional expected
// estimation error E_s.
absl::StatusOr<double> ConditionalError(const Mechanism& mech,
                                        const Attack& attack,
                                        const MetricSet& metrics, int s);

struct DifferentialReport {
  bool passed = true;
  // Largest value of p(o|s) - bound(s,s') * p(o|s') over the checked
  // triples; the check passes iff this is <= the tolerance. Zero for a
  // mechanism that meets some constraint with equality and violates none.
  double margin = 0.0;
  // The triple attaining `margin` (-1 when no pair was checked).
  int s = -1;
  int s_prime = -1;
  int o = -1;
  int pairs_checked = 0;
};

// Checks p(o|s) <= bound(s,s') * p(o|s') for every o and ordered pair
// s != s'. Without `d_eps_m`, bound = exp(eps_m * disting(s,s')) on all pairs;
// with it, bound = exp(eps_m) on pairs with disting(s,s') <= d_eps_m only.
// When `max_disting` is set, pairs with disting(s,s') above it are skipped
// (used to check pruned mechanisms against the constraints they kept).
absl::StatusOr<DifferentialReport> VerifyDifferential(
    const Mechanism& mech, const MetricSet& metrics, double eps_m,
    std::optional<double> d_eps_m = {},
    double tolerance = kDifferentialTolerance,
    std::optional<double> max_disting = {});

std::string DescribeReport(const DifferentialReport& report,
                           const Mechanism& mech);

}  // namespace privgame

#endif  // PRIVGAME_CORE_METRICS_H_
