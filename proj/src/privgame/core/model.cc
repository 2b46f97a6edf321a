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

#include "privgame/core/model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "absl/strings/str_cat.h"
#include "privgame/common/errors.h"

namespace privgame {
namespace {

absl::Status CheckTable(const Table& table, int rows, int cols,
                        std::string_view what) {
  if (table.rows() != rows || table.cols() != cols) {
    return DimensionMismatchError(absl::StrCat(
        std::string(what), " table is ", table.rows(), "x", table.cols(),
        ", expected ", rows, "x", cols));
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double v = table(r, c);
      if (!std::isfinite(v) || v < 0.0) {
        return InvalidArgumentError(absl::StrCat(
            std::string(what), " entry (", r, ",", c, ") = ", v,
            " is not a finite non-negative number"));
      }
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Prior> Prior::Create(LabelSpace secrets,
                                    std::vector<double> probs) {
  if (static_cast<int>(probs.size()) != secrets.size()) {
    return DimensionMismatchError(
        absl::StrCat("prior has ", probs.size(), " entries for ",
                     secrets.size(), " secrets"));
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      return InvalidArgumentError(
          absl::StrCat("prior probability ", p, " is not in [0, 1]"));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kPriorSumTolerance) {
    return InvalidArgumentError(
        absl::StrCat("prior sums to ", sum, ", expected 1"));
  }
  return Prior(std::move(secrets), std::move(probs));
}

Prior Prior::Uniform(LabelSpace secrets) {
  const int n = secrets.size();
  return Prior(std::move(secrets), std::vector<double>(n, 1.0 / n));
}

double Prior::Entropy() const {
  double h = 0.0;
  for (double p : probs_) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double StochasticMatrix::MaxRowSumError() const {
  double worst = 0.0;
  for (int r = 0; r < num_rows(); ++r) {
    worst = std::max(worst, std::abs(rows_.row(r).sum() - 1.0));
  }
  return worst;
}

double StochasticMatrix::MaxNegativity() const {
  return rows_.size() ? std::max(0.0, -rows_.minCoeff()) : 0.0;
}

absl::Status StochasticMatrix::Validate(const LabelSpace& rows_space,
                                        const LabelSpace& cols_space,
                                        const Table& rows, double tolerance,
                                        std::string_view what) {
  if (rows.rows() != rows_space.size() || rows.cols() != cols_space.size()) {
    return DimensionMismatchError(absl::StrCat(
        std::string(what), " matrix is ", rows.rows(), "x", rows.cols(),
        ", expected ", rows_space.size(), "x", cols_space.size()));
  }
  for (int r = 0; r < rows.rows(); ++r) {
    double sum = 0.0;
    for (int c = 0; c < rows.cols(); ++c) {
      const double v = rows(r, c);
      if (!std::isfinite(v) || v < 0.0) {
        return InvalidArgumentError(
            absl::StrCat(std::string(what), " entry (", rows_space.label(r),
                         ",", cols_space.label(c), ") = ", v,
                         " is not a probability"));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > tolerance) {
      return InvalidArgumentError(
          absl::StrCat(std::string(what), " row '", rows_space.label(r),
                       "' sums to ", sum, ", expected 1"));
    }
  }
  return absl::OkStatus();
}

Table StochasticMatrix::Normalize(Table rows) {
  for (int r = 0; r < rows.rows(); ++r) {
    double sum = 0.0;
    for (int c = 0; c < rows.cols(); ++c) {
      if (!(rows(r, c) > 0.0)) rows(r, c) = 0.0;
      sum += rows(r, c);
    }
    if (sum > 0.0) {
      rows.row(r) /= sum;
    } else {
      rows.row(r).setConstant(1.0 / rows.cols());
    }
  }
  return rows;
}

absl::StatusOr<Mechanism> Mechanism::Create(LabelSpace secrets,
                                            LabelSpace observables, Table rows,
                                            double tolerance) {
  PRIVGAME_RETURN_IF_ERROR(
      Validate(secrets, observables, rows, tolerance, "mechanism"));
  return Mechanism(secrets.WithRole(Role::kSecrets),
                   observables.WithRole(Role::kObservables), std::move(rows));
}

absl::StatusOr<Mechanism> Mechanism::CreateNormalized(LabelSpace secrets,
                                                      LabelSpace observables,
                                                      Table rows) {
  if (rows.rows() != secrets.size() || rows.cols() != observables.size()) {
    return DimensionMismatchError("mechanism matrix shape mismatch");
  }
  return Create(std::move(secrets), std::move(observables),
                Normalize(std::move(rows)));
}

Mechanism Mechanism::Identity(LabelSpace secrets) {
  const int n = secrets.size();
  LabelSpace observables = secrets.WithRole(Role::kObservables);
  return Mechanism(std::move(secrets), std::move(observables),
                   Table::Identity(n, n));
}

Mechanism Mechanism::Uniform(LabelSpace secrets, LabelSpace observables) {
  Table rows = Table::Constant(secrets.size(), observables.size(),
                               1.0 / observables.size());
  return Mechanism(std::move(secrets), std::move(observables),
                   std::move(rows));
}

absl::StatusOr<Attack> Attack::Create(LabelSpace observables,
                                      LabelSpace secrets, Table rows,
                                      double tolerance) {
  PRIVGAME_RETURN_IF_ERROR(
      Validate(observables, secrets, rows, tolerance, "attack"));
  return Attack(observables.WithRole(Role::kObservables),
                secrets.WithRole(Role::kSecrets), std::move(rows));
}

absl::StatusOr<Attack> Attack::CreateNormalized(LabelSpace observables,
                                                LabelSpace secrets,
                                                Table rows) {
  if (rows.rows() != observables.size() || rows.cols() != secrets.size()) {
    return DimensionMismatchError("attack matrix shape mismatch");
  }
  return Create(std::move(observables), std::move(secrets),
                Normalize(std::move(rows)));
}

Attack Attack::Uniform(LabelSpace observables, LabelSpace secrets) {
  Table rows =
      Table::Constant(observables.size(), secrets.size(), 1.0 / secrets.size());
  return Attack(std::move(observables), std::move(secrets), std::move(rows));
}

absl::StatusOr<MetricSet> MetricSet::Create(LabelSpace secrets,
                                            LabelSpace observables, Table cost,
                                            Table privacy, Table disting,
                                            std::optional<Table> ground) {
  const int ns = secrets.size();
  const int no = observables.size();
  PRIVGAME_RETURN_IF_ERROR(CheckTable(cost, no, ns, "cost"));
  PRIVGAME_RETURN_IF_ERROR(CheckTable(privacy, ns, ns, "privacy"));
  PRIVGAME_RETURN_IF_ERROR(CheckTable(disting, ns, ns, "disting"));
  for (int s = 0; s < ns; ++s) {
    if (disting(s, s) != 0.0) {
      return InvalidArgumentError(absl::StrCat(
          "disting(", secrets.label(s), ",", secrets.label(s), ") must be 0"));
    }
  }
  if (ground.has_value()) {
    PRIVGAME_RETURN_IF_ERROR(CheckTable(*ground, no, ns, "ground"));
  } else if (observables.SameLabels(secrets)) {
    ground = privacy;
  }
  return MetricSet(secrets.WithRole(Role::kSecrets),
                   observables.WithRole(Role::kObservables), std::move(cost),
                   std::move(privacy), std::move(disting), std::move(ground));
}

absl::Status PrivacyBounds::Validate() const {
  if (!(d_m >= 0.0) || !std::isfinite(d_m)) {
    return InvalidArgumentError(absl::StrCat("d_m = ", d_m, " must be >= 0"));
  }
  if (!(eps_m >= 0.0) || !std::isfinite(eps_m)) {
    return InvalidArgumentError(
        absl::StrCat("eps_m = ", eps_m, " must be >= 0"));
  }
  if (d_eps_m.has_value() && (!(*d_eps_m >= 0.0) || !std::isfinite(*d_eps_m))) {
    return InvalidArgumentError(
        absl::StrCat("d_eps_m = ", *d_eps_m, " must be >= 0"));
  }
  return absl::OkStatus();
}

absl::Status CheckCompatible(const Prior& prior, const Mechanism& mech) {
  if (!prior.secrets().SameLabels(mech.secrets())) {
    return DimensionMismatchError(
        "prior and mechanism are over different secret spaces");
  }
  return absl::OkStatus();
}

absl::Status CheckCompatible(const Mechanism& mech, const MetricSet& metrics) {
  if (!mech.secrets().SameLabels(metrics.secrets()) ||
      !mech.observables().SameLabels(metrics.observables())) {
    return DimensionMismatchError(
        "mechanism and metrics are over different label spaces");
  }
  return absl::OkStatus();
}

absl::Status CheckCompatible(const Mechanism& mech, const Attack& attack) {
  if (!mech.secrets().SameLabels(attack.secrets()) ||
      !mech.observables().SameLabels(attack.observables())) {
    return DimensionMismatchError(
        "mechanism and attack are over different label spaces");
  }
  return absl::OkStatus();
}

}  // namespace privgame
