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

#include "privgame/core/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "privgame/common/errors.h"

namespace privgame {
namespace {

double RowCost(const Mechanism& mech, const MetricSet& metrics, int s) {
  double cost = 0.0;
  for (int o = 0; o < mech.num_cols(); ++o) {
    cost += mech(s, o) * metrics.cost()(o, s);
  }
  return cost;
}

double RowPrivacy(const Mechanism& mech, const Attack& attack,
                  const MetricSet& metrics, int s) {
  double total = 0.0;
  for (int o = 0; o < mech.num_cols(); ++o) {
    const double p = mech(s, o);
    if (p == 0.0) continue;
    double inner = 0.0;
    for (int s_hat = 0; s_hat < attack.num_cols(); ++s_hat) {
      inner += attack(o, s_hat) * metrics.privacy()(s_hat, s);
    }
    total += p * inner;
  }
  return total;
}

absl::Status CheckAll(const Mechanism& mech, const Attack& attack,
                      const MetricSet& metrics) {
  PRIVGAME_RETURN_IF_ERROR(CheckCompatible(mech, metrics));
  return CheckCompatible(mech, attack);
}

}  // namespace

absl::StatusOr<double> ExpectedCost(const Prior& prior, const Mechanism& mech,
                                    const MetricSet& metrics) {
  PRIVGAME_RETURN_IF_ERROR(CheckCompatible(prior, mech));
  PRIVGAME_RETURN_IF_ERROR(CheckCompatible(mech, metrics));
  double cost = 0.0;
  for (int s = 0; s < mech.num_rows(); ++s) {
    if (prior[s] != 0.0) cost += prior[s] * RowCost(mech, metrics, s);
  }
  return cost;
}

absl::StatusOr<double> WorstCaseCost(const Mechanism& mech,
                                     const MetricSet& metrics) {
  PRIVGAME_RETURN_IF_ERROR(CheckCompatible(mech, metrics));
  double worst = 0.0;
  for (int s = 0; s < mech.num_rows(); ++s) {
    worst = std::max(worst, RowCost(mech, metrics, s));
  }
  return worst;
}

absl::StatusOr<double> PrivacyOfSecret(const Mechanism& mech,
                                       const Attack& attack,
                                       const MetricSet& metrics, int s) {
  PRIVGAME_RETURN_IF_ERROR(CheckAll(mech, attack, metrics));
  if (s < 0 || s >= mech.num_rows()) {
    return UnknownLabelError(absl::StrCat("secret index ", s, " out of range"));
  }
  return RowPrivacy(mech, attack, metrics, s);
}

absl::StatusOr<double> PrivacyOfSecret(const Mechanism& mech,
                                       const Attack& attack,
                                       const MetricSet& metrics,
                                       std::string_view secret_label) {
  PRIVGAME_ASSIGN_OR_RETURN(int s, mech.secrets().IndexOf(secret_label));
  return PrivacyOfSecret(mech, attack, metrics, s);
}

absl::StatusOr<double> ExpectedPrivacy(const Prior& prior,
                                       const Mechanism& mech,
                                       const Attack& attack,
                                       const MetricSet& metrics) {
  PRIVGAME_RETURN_IF_ERROR(CheckCompatible(prior, mech));
  PRIVGAME_RETURN_IF_ERROR(CheckAll(mech, attack, metrics));
  double total = 0.0;
  for (int s = 0; s < mech.num_rows(); ++s) {
    if (prior[s] != 0.0) {
      total += prior[s] * RowPrivacy(mech, attack, metrics, s);
    }
  }
  return total;
}

absl::StatusOr<double> ConditionalError(const Mechanism& mech,
                                        const Attack& attack,
                                        const MetricSet& metrics, int s) {
  return PrivacyOfSecret(mech, attack, metrics, s);
}

absl::StatusOr<DifferentialReport> VerifyDifferential(
    const Mechanism& mech, const MetricSet& metrics, double eps_m,
    std::optional<double> d_eps_m, double tolerance,
    std::optional<double> max_disting) {
  PRIVGAME_RETURN_IF_ERROR(CheckCompatible(mech, metrics));
  if (!(eps_m >= 0.0)) {
    return InvalidArgumentError(absl::StrCat("eps_m = ", eps_m, " must be >= 0"));
  }
  DifferentialReport report;
  report.margin = -std::numeric_limits<double>::infinity();
  const int ns = mech.num_rows();
  const int no = mech.num_cols();
  for (int s = 0; s < ns; ++s) {
    for (int t = 0; t < ns; ++t) {
      if (s == t) continue;
      const double dist = metrics.disting()(s, t);
      if (max_disting.has_value() && dist > *max_disting) continue;
      double bound;
      if (d_eps_m.has_value()) {
        if (dist > *d_eps_m) continue;
        bound = std::exp(eps_m);
      } else {
        bound = std::exp(eps_m * dist);
      }
      ++report.pairs_checked;
      for (int o = 0; o < no; ++o) {
        // An infinite bound only constrains anything when p(o|s') = 0.
        const double rhs = mech(t, o) == 0.0 ? 0.0 : bound * mech(t, o);
        const double excess = mech(s, o) - rhs;
        if (excess > report.margin) {
          report.margin = excess;
          report.s = s;
          report.s_prime = t;
          report.o = o;
        }
      }
    }
  }
  if (report.pairs_checked == 0) report.margin = 0.0;
  report.passed = report.margin <= tolerance;
  return report;
}

std::string DescribeReport(const DifferentialReport& report,
                           const Mechanism& mech) {
  if (report.s < 0) {
    return absl::StrCat(report.passed ? "pass" : "fail",
                        " (no constrained pairs)");
  }
  return absl::StrCat(report.passed ? "pass" : "fail", ": worst triple (s=",
                      mech.secrets().label(report.s),
                      ", s'=", mech.secrets().label(report.s_prime),
                      ", o=", mech.observables().label(report.o),
                      ") margin ", report.margin, " over ",
                      report.pairs_checked, " pairs");
}

}  // namespace privgame
