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

#include "privgame/harness/experiments.h"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "privgame/attack/attack.h"
#include "privgame/common/errors.h"
#include "privgame/core/metrics.h"

namespace privgame::harness {
namespace {

// Slack for the re-validation of every written row.
constexpr double kRowSumSlack = 1e-6;
constexpr double kNegativitySlack = 1e-9;
constexpr double kPrivacySlack = 1e-6;

constexpr std::array<const char*, kNumMechanismKinds> kKindSuffix = {
    "diff", "dist", "joint"};
constexpr std::array<const char*, kNumMechanismKinds> kKindText = {
    "the differential mechanism", "the distortion mechanism",
    "the joint mechanism"};

std::string StatusText(const absl::Status& status) {
  if (status.ok()) return "ok";
  // Messages already start with the error kind.
  return std::string(status.message());
}

std::string HostName() {
  char buffer[256] = {};
  if (gethostname(buffer, sizeof(buffer) - 1) != 0) return "unknown";
  return buffer;
}

std::vector<double> OrDefault(const std::vector<double>& values,
                              std::vector<double> fallback) {
  return values.empty() ? std::move(fallback) : values;
}

std::vector<double> DefaultEpsLadder() {
  return {0.15, 0.3, 0.45, 0.6, 0.75, 0.9};
}

// The privacy a mechanism owes and the differential constraints it kept.
struct Guarantees {
  std::optional<double> dm;
  std::optional<double> eps;
  std::optional<double> max_disting;
};

// Re-validates the row-stochastic invariants and the declared privacy
// guarantees of `mech`; `ap_optimal` is its privacy against the optimal
// attack.
absl::Status Revalidate(const Mechanism& mech, const MetricSet& metrics,
                        double ap_optimal, const Guarantees& guarantees) {
  if (mech.MaxRowSumError() > kRowSumSlack ||
      mech.MaxNegativity() > kNegativitySlack) {
    return MakeError(ErrorKind::kPostCheckFailed,
                     "mechanism rows are not probability distributions");
  }
  if (guarantees.dm.has_value() && ap_optimal < *guarantees.dm - kPrivacySlack) {
    return MakeError(ErrorKind::kPostCheckFailed,
                     absl::StrCat("privacy ", ap_optimal,
                                  " is below the threshold ", *guarantees.dm));
  }
  if (guarantees.eps.has_value()) {
    PRIVGAME_ASSIGN_OR_RETURN(
        DifferentialReport report,
        VerifyDifferential(mech, metrics, *guarantees.eps, std::nullopt,
                           kDifferentialTolerance, guarantees.max_disting));
    if (!report.passed) {
      return MakeError(ErrorKind::kPostCheckFailed,
                       DescribeReport(report, mech));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<double> OptimalPrivacy(const Prior& prior, const Mechanism& mech,
                                      const MetricSet& metrics) {
  PRIVGAME_ASSIGN_OR_RETURN(Attack attack,
                            OptimalAttackClosedForm(prior, mech, metrics));
  return ExpectedPrivacy(prior, mech, attack, metrics);
}

absl::Status Measure(const Prior& prior, const MetricSet& metrics,
                     const MechanismResult& result,
                     const Guarantees& guarantees, Evaluation& eval) {
  eval.cost = result.cost;
  eval.seconds = result.solve_seconds;
  PRIVGAME_ASSIGN_OR_RETURN(eval.ap_optimal,
                            OptimalPrivacy(prior, result.mechanism, metrics));
  PRIVGAME_ASSIGN_OR_RETURN(BayesAttackResult bayes,
                            BayesAttack(prior, result.mechanism));
  PRIVGAME_ASSIGN_OR_RETURN(
      eval.ap_bayes,
      ExpectedPrivacy(prior, result.mechanism, bayes.attack, metrics));
  return Revalidate(result.mechanism, metrics, eval.ap_optimal, guarantees);
}

// Fills `eval` from a construction outcome.
void Evaluate(const Prior& prior, const MetricSet& metrics,
              const absl::StatusOr<MechanismResult>& result,
              const Guarantees& guarantees, Evaluation& eval) {
  if (!result.ok()) {
    eval.status = StatusText(result.status());
    eval.ok = false;
    return;
  }
  const absl::Status status =
      Measure(prior, metrics, *result, guarantees, eval);
  eval.status = StatusText(status);
  eval.ok = status.ok();
}

BuildOptions MakeBuildOptions(const ExperimentConfig& config) {
  BuildOptions options;
  options.solver = config.solver;
  return options;
}

void AddCommonMetadata(const std::string& name, const ExperimentConfig& config,
                       CsvTable& table) {
  table.AddMetadata("experiment", name);
  std::string grid = geo::GridToJson(config.grid);
  if (!grid.empty() && grid.back() == '\n') grid.pop_back();
  table.AddMetadata("grid", grid);
  table.AddMetadata("users", absl::StrCat(config.users));
  table.AddMetadata("seed", absl::StrCat(config.seed));
  table.AddMetadata("trace_length", absl::StrCat(config.trace_length));
  table.AddMetadata("prior_smoothing", FormatNumber(config.prior_smoothing));
  table.AddMetadata("objective", config.objective == CostObjective::kAverage
                                     ? "average"
                                     : "worst");
  table.AddMetadata("host", HostName());
}

std::string JoinNumbers(const std::vector<double>& values) {
  std::vector<std::string> parts;
  parts.reserve(values.size());
  for (double v : values) parts.push_back(FormatNumber(v));
  return absl::StrJoin(parts, " ");
}

void AddMechanismColumns(std::vector<CsvTable::Column>& columns) {
  for (const char* metric : {"cost", "ap_opt", "ap_bayes"}) {
    for (int k = 0; k < kNumMechanismKinds; ++k) {
      std::string what;
      if (std::string(metric) == "cost") {
        what = "expected cost of ";
      } else if (std::string(metric) == "ap_opt") {
        what = "expected privacy (km) against the optimal attack of ";
      } else {
        what = "expected privacy (km) against the Bayesian attack of ";
      }
      columns.push_back({absl::StrCat(metric, "_", kKindSuffix[k]),
                         absl::StrCat(what, kKindText[k])});
    }
  }
  for (int k = 0; k < kNumMechanismKinds; ++k) {
    columns.push_back({absl::StrCat("status_", kKindSuffix[k]),
                       absl::StrCat("ok, or why ", kKindText[k],
                                    " is missing or failed re-validation")});
  }
  for (int k = 0; k < kNumMechanismKinds; ++k) {
    columns.push_back({absl::StrCat("time_", kKindSuffix[k]),
                       absl::StrCat("seconds to build and solve the program of ",
                                    kKindText[k]),
                       /*timing=*/true});
  }
}

void AppendMechanismCells(
    const std::array<Evaluation, kNumMechanismKinds>& mech,
    std::vector<std::string>& cells) {
  auto value = [](const Evaluation& e, double v) -> std::optional<double> {
    if (!e.ok) return std::nullopt;
    return v;
  };
  for (int k = 0; k < kNumMechanismKinds; ++k) {
    cells.push_back(FormatNumber(value(mech[k], mech[k].cost)));
  }
  for (int k = 0; k < kNumMechanismKinds; ++k) {
    cells.push_back(FormatNumber(value(mech[k], mech[k].ap_optimal)));
  }
  for (int k = 0; k < kNumMechanismKinds; ++k) {
    cells.push_back(FormatNumber(value(mech[k], mech[k].ap_bayes)));
  }
  for (int k = 0; k < kNumMechanismKinds; ++k) cells.push_back(mech[k].status);
  for (int k = 0; k < kNumMechanismKinds; ++k) {
    cells.push_back(absl::StrFormat("%.3f", mech[k].seconds));
  }
}

absl::Status ValidateConfig(const ExperimentConfig& config) {
  if (config.users < 1) {
    return InvalidArgumentError(
        absl::StrCat("users must be at least 1, got ", config.users));
  }
  if (config.trace_length < 1) {
    return InvalidArgumentError(absl::StrCat(
        "trace length must be at least 1, got ", config.trace_length));
  }
  return absl::OkStatus();
}

absl::StatusOr<ExperimentResult<TripleRow>> RunTriples(
    const std::string& name, const ExperimentConfig& config,
    const std::vector<double>& offsets) {
  PRIVGAME_RETURN_IF_ERROR(ValidateConfig(config));
  for (double offset : offsets) {
    if (!(offset >= 0.0) || !std::isfinite(offset)) {
      return InvalidArgumentError(
          absl::StrCat("d_m offsets must be >= 0, got ", offset));
    }
  }
  const std::vector<double> eps_ladder =
      OrDefault(config.eps_ladder, DefaultEpsLadder());
  const MetricSet metrics = geo::LocationMetrics(config.grid);
  const BuildOptions options = MakeBuildOptions(config);
  PRIVGAME_ASSIGN_OR_RETURN(std::vector<UserInstance> users, MakeUsers(config));

  std::vector<CsvTable::Column> columns = {
      {"user", "synthetic user id"},
      {"eps", "differential budget eps_m (per km)"},
      {"offset", "amount (km) added to AP of the differential mechanism"},
      {"dm", "distortion threshold d_m (km) for the distortion and joint "
             "mechanisms"},
      {"dm_max", "largest achievable distortion level (km) for the user"},
  };
  AddMechanismColumns(columns);
  ExperimentResult<TripleRow> result{{}, CsvTable(std::move(columns))};
  AddCommonMetadata(name, config, result.table);
  result.table.AddMetadata("eps_ladder", JoinNumbers(eps_ladder));
  result.table.AddMetadata("dm_offsets", JoinNumbers(offsets));

  for (const UserInstance& user : users) {
    PRIVGAME_ASSIGN_OR_RETURN(
        double dm_max, MaxDistortion(user.prior, metrics, options.solver));
    for (double eps : eps_ladder) {
      TripleRow base;
      base.user = user.id;
      base.eps = eps;
      base.dm_max = dm_max;
      Evaluate(user.prior, metrics,
               OptimalDifferential(user.prior, metrics, eps, options),
               {.eps = eps}, base.mech[kDifferentialMech]);
      for (double offset : offsets) {
        TripleRow row = base;
        row.offset = offset;
        if (row.mech[kDifferentialMech].ok) {
          const double dm = row.mech[kDifferentialMech].ap_optimal + offset;
          row.dm = dm;
          Evaluate(user.prior, metrics,
                   OptimalDistortion(user.prior, metrics, dm, config.objective,
                                     options),
                   {.dm = dm}, row.mech[kDistortionMech]);
          Evaluate(user.prior, metrics,
                   OptimalJoint(user.prior, metrics, dm, eps, options),
                   {.dm = dm, .eps = eps}, row.mech[kJointMech]);
        } else {
          for (int k : {kDistortionMech, kJointMech}) {
            row.mech[k].status = "skipped: no differential mechanism";
          }
        }
        std::vector<std::string> cells = {row.user, FormatNumber(row.eps),
                                          FormatNumber(row.offset),
                                          FormatNumber(row.dm),
                                          FormatNumber(row.dm_max)};
        AppendMechanismCells(row.mech, cells);
        result.table.AddRow(std::move(cells));
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

// d_m values for one user: ladder entries below `dm_max`, then `dm_max`.
std::vector<double> CappedDmLadder(const std::vector<double>& ladder,
                                   double dm_max) {
  std::vector<double> values;
  if (ladder.empty()) {
    for (int k = 1; 0.5 * k < dm_max - 1e-9; ++k) values.push_back(0.5 * k);
    values.push_back(dm_max);
    return values;
  }
  for (double dm : ladder) {
    const double capped = std::min(dm, dm_max);
    if (std::find(values.begin(), values.end(), capped) == values.end()) {
      values.push_back(capped);
    }
  }
  return values;
}

}  // namespace

geo::Grid DefaultGrid() { return *geo::Grid::Create(8, 6, 6.0, 4.0); }

absl::StatusOr<std::vector<double>> ParseLadder(const std::string& text) {
  const std::vector<std::string> parts = absl::StrSplit(text, ':');
  std::vector<double> numbers;
  for (const std::string& part : parts) {
    double value = 0.0;
    if (!absl::SimpleAtod(absl::StripAsciiWhitespace(part), &value) ||
        !std::isfinite(value)) {
      return MakeError(ErrorKind::kParse,
                       absl::StrCat("bad number \"", part, "\" in ladder \"",
                                    text, "\""));
    }
    numbers.push_back(value);
  }
  if (numbers.size() == 1) return numbers;
  if (numbers.size() != 3) {
    return MakeError(ErrorKind::kParse,
                     absl::StrCat("ladder \"", text,
                                  "\" must be a number or start:stop:step"));
  }
  const double start = numbers[0];
  const double stop = numbers[1];
  const double step = numbers[2];
  if (!(step > 0.0) || stop < start) {
    return InvalidArgumentError(absl::StrCat(
        "ladder \"", text, "\" needs step > 0 and stop >= start"));
  }
  const double count = std::floor((stop - start) / step + 1e-9);
  if (count > 100000) {
    return InvalidArgumentError(
        absl::StrCat("ladder \"", text, "\" has too many steps"));
  }
  std::vector<double> ladder;
  for (int k = 0; k <= static_cast<int>(count); ++k) {
    // Snap away the accumulation error of start + k * step.
    ladder.push_back(std::round((start + k * step) * 1e12) / 1e12);
  }
  return ladder;
}

absl::StatusOr<std::vector<UserInstance>> MakeUsers(
    const ExperimentConfig& config) {
  PRIVGAME_RETURN_IF_ERROR(ValidateConfig(config));
  std::vector<UserInstance> users;
  users.reserve(config.users);
  for (int u = 0; u < config.users; ++u) {
    const std::string id = absl::StrCat("user", u);
    const geo::Trace trace =
        geo::SyntheticTrace(config.grid, config.trace_length,
                            config.seed * 1000 + u, config.mobility, id);
    PRIVGAME_ASSIGN_OR_RETURN(
        Prior prior,
        geo::PriorFromTrace(trace, config.grid, config.prior_smoothing));
    users.push_back({id, std::move(prior)});
  }
  return users;
}

absl::StatusOr<ExperimentResult<TripleRow>> RunScenario1(
    const ExperimentConfig& config) {
  return RunTriples("scenario1", config, {0.0});
}

absl::StatusOr<ExperimentResult<TripleRow>> RunScenario2(
    const ExperimentConfig& config) {
  return RunTriples("scenario2", config,
                    OrDefault(config.dm_offsets, {0.1, 0.2, 0.4}));
}

absl::StatusOr<ExperimentResult<SweepRow>> RunScenario3(
    const ExperimentConfig& config) {
  PRIVGAME_RETURN_IF_ERROR(ValidateConfig(config));
  const std::vector<double> eps_ladder =
      OrDefault(config.eps_ladder, {0.2, 0.4, 0.6, 0.8, 1.0});
  const MetricSet metrics = geo::LocationMetrics(config.grid);
  const BuildOptions options = MakeBuildOptions(config);
  PRIVGAME_ASSIGN_OR_RETURN(std::vector<UserInstance> users, MakeUsers(config));

  std::vector<CsvTable::Column> columns = {
      {"user", "synthetic user id"},
      {"eps", "differential budget eps_m (per km)"},
      {"dm", "distortion threshold d_m (km)"},
      {"dm_max", "largest achievable distortion level (km) for the user"},
  };
  AddMechanismColumns(columns);
  columns.push_back(
      {"equality_gap",
       "(ap_opt_joint - max(ap_opt_diff, ap_opt_dist)) / max(ap_opt_diff, "
       "ap_opt_dist)"});
  ExperimentResult<SweepRow> result{{}, CsvTable(std::move(columns))};
  AddCommonMetadata("scenario3", config, result.table);
  result.table.AddMetadata("eps_ladder", JoinNumbers(eps_ladder));
  result.table.AddMetadata(
      "dm_ladder", config.dm_ladder.empty() ? "0.5, 1.0, ... below dm_max, "
                                              "then dm_max"
                                            : JoinNumbers(config.dm_ladder));
  result.table.AddMetadata("order", "ascending ap_opt_joint, failed cells last");

  for (const UserInstance& user : users) {
    PRIVGAME_ASSIGN_OR_RETURN(
        double dm_max, MaxDistortion(user.prior, metrics, options.solver));
    const std::vector<double> dm_ladder =
        CappedDmLadder(config.dm_ladder, dm_max);
    std::vector<Evaluation> eps_only(eps_ladder.size());
    for (size_t i = 0; i < eps_ladder.size(); ++i) {
      Evaluate(user.prior, metrics,
               OptimalDifferential(user.prior, metrics, eps_ladder[i], options),
               {.eps = eps_ladder[i]}, eps_only[i]);
    }
    std::vector<Evaluation> dm_only(dm_ladder.size());
    for (size_t j = 0; j < dm_ladder.size(); ++j) {
      Evaluate(user.prior, metrics,
               OptimalDistortion(user.prior, metrics, dm_ladder[j],
                                 config.objective, options),
               {.dm = dm_ladder[j]}, dm_only[j]);
    }
    for (size_t i = 0; i < eps_ladder.size(); ++i) {
      for (size_t j = 0; j < dm_ladder.size(); ++j) {
        SweepRow row;
        row.user = user.id;
        row.eps = eps_ladder[i];
        row.dm = dm_ladder[j];
        row.dm_max = dm_max;
        row.mech[kDifferentialMech] = eps_only[i];
        row.mech[kDistortionMech] = dm_only[j];
        Evaluate(user.prior, metrics,
                 OptimalJoint(user.prior, metrics, row.dm, row.eps, options),
                 {.dm = row.dm, .eps = row.eps}, row.mech[kJointMech]);
        if (row.mech[kDifferentialMech].ok && row.mech[kDistortionMech].ok &&
            row.mech[kJointMech].ok) {
          const double reference =
              std::max(row.mech[kDifferentialMech].ap_optimal,
                       row.mech[kDistortionMech].ap_optimal);
          if (reference > 0.0) {
            row.equality_gap =
                (row.mech[kJointMech].ap_optimal - reference) / reference;
          }
        }
        result.rows.push_back(std::move(row));
      }
    }
  }

  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     const bool a_ok = a.mech[kJointMech].ok;
                     const bool b_ok = b.mech[kJointMech].ok;
                     if (a_ok != b_ok) return a_ok;
                     if (!a_ok) return false;
                     return a.mech[kJointMech].ap_optimal <
                            b.mech[kJointMech].ap_optimal;
                   });
  for (const SweepRow& row : result.rows) {
    std::vector<std::string> cells = {row.user, FormatNumber(row.eps),
                                      FormatNumber(row.dm),
                                      FormatNumber(row.dm_max)};
    AppendMechanismCells(row.mech, cells);
    cells.push_back(FormatNumber(row.equality_gap));
    result.table.AddRow(std::move(cells));
  }
  return result;
}

absl::StatusOr<ExperimentResult<MismatchRow>> RunPriorMismatch(
    const ExperimentConfig& config) {
  PRIVGAME_RETURN_IF_ERROR(ValidateConfig(config));
  const std::vector<double> eps_ladder =
      OrDefault(config.eps_ladder, DefaultEpsLadder());
  const std::vector<double> betas =
      OrDefault(config.sharpen_betas, {1.0, 2.0, 4.0, 8.0});
  const MetricSet metrics = geo::LocationMetrics(config.grid);
  const BuildOptions options = MakeBuildOptions(config);
  PRIVGAME_ASSIGN_OR_RETURN(std::vector<UserInstance> users, MakeUsers(config));

  std::vector<CsvTable::Column> columns = {
      {"user", "synthetic user id"},
      {"eps", "differential budget eps_m (per km)"},
      {"dm", "distortion threshold d_m (km), set to ap of the differential "
             "mechanism under the user's prior"},
      {"k", "number of boosted cells in the adversary's prior"},
      {"beta", "boost factor of the adversary's prior"},
      {"entropy_prior", "entropy (nats) of the user's prior pi"},
      {"entropy_sharpened", "entropy (nats) of the adversary's prior pi_hat"},
      {"ap_prior_diff", "privacy (km) of the differential mechanism against "
                        "the pi-optimal attack, under pi"},
      {"ap_naive_diff", "privacy (km) of the differential mechanism against "
                        "the pi-optimal attack, under pi_hat"},
      {"ap_sharpened_diff", "privacy (km) of the differential mechanism "
                            "against the pi_hat-optimal attack, under pi_hat"},
      {"ap_prior_dist", "privacy (km) of the distortion mechanism against "
                        "the pi-optimal attack, under pi"},
      {"ap_naive_dist", "privacy (km) of the distortion mechanism against "
                        "the pi-optimal attack, under pi_hat"},
      {"ap_sharpened_dist", "privacy (km) of the distortion mechanism "
                            "against the pi_hat-optimal attack, under pi_hat"},
      {"status", "ok, or why the row is incomplete"},
  };
  ExperimentResult<MismatchRow> result{{}, CsvTable(std::move(columns))};
  AddCommonMetadata("prior", config, result.table);
  result.table.AddMetadata("eps_ladder", JoinNumbers(eps_ladder));
  result.table.AddMetadata("sharpen_k", absl::StrCat(config.sharpen_k));
  result.table.AddMetadata("sharpen_betas", JoinNumbers(betas));

  for (const UserInstance& user : users) {
    for (double eps : eps_ladder) {
      // Mechanisms are built once per eps with the user's prior.
      absl::StatusOr<MechanismResult> diff =
          OptimalDifferential(user.prior, metrics, eps, options);
      Evaluation diff_eval;
      Evaluate(user.prior, metrics, diff, {.eps = eps}, diff_eval);
      const double dm = diff_eval.ok ? diff_eval.ap_optimal : 0.0;
      absl::StatusOr<MechanismResult> dist = InfeasibleError("not built");
      Evaluation dist_eval;
      if (diff_eval.ok) {
        dist = OptimalDistortion(user.prior, metrics, dm, config.objective,
                                 options);
        Evaluate(user.prior, metrics, dist, {.dm = dm}, dist_eval);
      }
      for (double beta : betas) {
        MismatchRow row;
        row.user = user.id;
        row.eps = eps;
        row.dm = dm;
        row.k = config.sharpen_k;
        row.beta = beta;
        row.entropy_prior = user.prior.Entropy();
        absl::Status status = absl::OkStatus();
        if (!diff_eval.ok) {
          status = InvalidArgumentError(
              absl::StrCat("differential mechanism: ", diff_eval.status));
        } else if (!dist_eval.ok) {
          status = InvalidArgumentError(
              absl::StrCat("distortion mechanism: ", dist_eval.status));
        }
        if (status.ok()) {
          status = [&]() -> absl::Status {
            PRIVGAME_ASSIGN_OR_RETURN(
                Prior sharpened,
                geo::SharpenPrior(user.prior, config.sharpen_k, beta));
            row.entropy_sharpened = sharpened.Entropy();
            const std::array<const Mechanism*, 2> mechs = {&diff->mechanism,
                                                           &dist->mechanism};
            for (int k = 0; k < 2; ++k) {
              PRIVGAME_ASSIGN_OR_RETURN(
                  row.ap_prior[k], OptimalPrivacy(user.prior, *mechs[k], metrics));
              PRIVGAME_ASSIGN_OR_RETURN(
                  row.ap_sharpened[k],
                  OptimalPrivacy(sharpened, *mechs[k], metrics));
              PRIVGAME_ASSIGN_OR_RETURN(
                  Attack naive,
                  OptimalAttackClosedForm(user.prior, *mechs[k], metrics));
              PRIVGAME_ASSIGN_OR_RETURN(
                  row.ap_naive[k],
                  ExpectedPrivacy(sharpened, *mechs[k], naive, metrics));
            }
            return absl::OkStatus();
          }();
        }
        row.status = StatusText(status);
        row.ok = status.ok();
        auto value = [&](double v) -> std::optional<double> {
          if (!row.ok) return std::nullopt;
          return v;
        };
        result.table.AddRow(
            {row.user, FormatNumber(row.eps), FormatNumber(value(row.dm)),
             absl::StrCat(row.k), FormatNumber(row.beta),
             FormatNumber(row.entropy_prior),
             FormatNumber(value(row.entropy_sharpened)),
             FormatNumber(value(row.ap_prior[0])),
             FormatNumber(value(row.ap_naive[0])),
             FormatNumber(value(row.ap_sharpened[0])),
             FormatNumber(value(row.ap_prior[1])),
             FormatNumber(value(row.ap_naive[1])),
             FormatNumber(value(row.ap_sharpened[1])), row.status});
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

absl::StatusOr<ExperimentResult<ApproxRow>> RunApproxSweep(
    const ExperimentConfig& config) {
  PRIVGAME_RETURN_IF_ERROR(ValidateConfig(config));
  const std::vector<double> eps_ladder = OrDefault(config.eps_ladder, {0.5});
  const double diameter = config.grid.Diameter();
  std::vector<double> radii = config.radius_ladder;
  if (radii.empty()) {
    for (double fraction : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      radii.push_back(fraction * diameter);
    }
  }
  const MetricSet metrics = geo::LocationMetrics(config.grid);
  const BuildOptions exact_options = MakeBuildOptions(config);
  PRIVGAME_ASSIGN_OR_RETURN(std::vector<UserInstance> users, MakeUsers(config));
  const double dm = config.approx_dm;
  const bool joint = dm > 0.0;

  std::vector<CsvTable::Column> columns = {
      {"user", "synthetic user id"},
      {"eps", "differential budget eps_m (per km)"},
      {"dm", "distortion threshold d_m (km); 0 sweeps the differential "
             "mechanism, otherwise the joint one"},
      {"radius", "distinguishability radius (km) beyond which differential "
                 "constraints are dropped"},
      {"ap_exact", "privacy (km) of the exact mechanism against the optimal "
                   "attack"},
      {"ap_pruned", "privacy (km) of the pruned mechanism against the "
                    "optimal attack"},
      {"error", "|ap_exact - ap_pruned| (km)"},
      {"cost_exact", "expected cost of the exact mechanism"},
      {"cost_pruned", "expected cost of the pruned mechanism"},
      {"constraints_exact", "constraints in the exact program"},
      {"constraints_pruned", "constraints in the pruned program"},
      {"status", "ok, or why the row is incomplete"},
      {"time_exact", "seconds to build and solve the exact program",
       /*timing=*/true},
      {"time_pruned", "seconds to build and solve the pruned program",
       /*timing=*/true},
  };
  ExperimentResult<ApproxRow> result{{}, CsvTable(std::move(columns))};
  AddCommonMetadata("approx", config, result.table);
  result.table.AddMetadata("eps_ladder", JoinNumbers(eps_ladder));
  result.table.AddMetadata("radius_ladder", JoinNumbers(radii));
  result.table.AddMetadata("grid_diameter_km", FormatNumber(diameter));
  result.table.AddMetadata(
      "support_radius", config.approx_support_radius.has_value()
                            ? FormatNumber(*config.approx_support_radius)
                            : "none");

  auto build = [&](const Prior& prior, double eps,
                   const BuildOptions& options) {
    return joint ? OptimalJoint(prior, metrics, dm, eps, options)
                 : OptimalDifferential(prior, metrics, eps, options);
  };

  for (const UserInstance& user : users) {
    for (double eps : eps_ladder) {
      const absl::StatusOr<MechanismResult> exact =
          build(user.prior, eps, exact_options);
      Evaluation exact_eval;
      Guarantees exact_guarantees{.eps = eps};
      if (joint) exact_guarantees.dm = dm;
      Evaluate(user.prior, metrics, exact, exact_guarantees, exact_eval);
      for (double radius : radii) {
        ApproxRow row;
        row.user = user.id;
        row.eps = eps;
        row.dm = dm;
        row.radius = radius;
        if (!exact_eval.ok) {
          row.status = absl::StrCat("exact mechanism: ", exact_eval.status);
        } else {
          row.ap_exact = exact_eval.ap_optimal;
          row.cost_exact = exact_eval.cost;
          row.seconds_exact = exact_eval.seconds;
          row.constraints_exact = exact->lp_constraints;
          BuildOptions options = exact_options;
          options.approx.radius_disting = radius;
          options.approx.radius_support = config.approx_support_radius;
          const absl::StatusOr<MechanismResult> pruned =
              build(user.prior, eps, options);
          Evaluation pruned_eval;
          Guarantees guarantees{.eps = eps, .max_disting = radius};
          if (joint) guarantees.dm = dm;
          Evaluate(user.prior, metrics, pruned, guarantees, pruned_eval);
          row.status = pruned_eval.status;
          row.ok = pruned_eval.ok;
          if (pruned.ok()) {
            row.seconds_pruned = pruned->solve_seconds;
            row.constraints_pruned = pruned->lp_constraints;
          }
          if (row.ok) {
            row.ap_pruned = pruned_eval.ap_optimal;
            row.cost_pruned = pruned_eval.cost;
            row.error = std::abs(row.ap_exact - row.ap_pruned);
          }
        }
        auto value = [&](double v) -> std::optional<double> {
          if (!row.ok) return std::nullopt;
          return v;
        };
        result.table.AddRow(
            {row.user, FormatNumber(row.eps), FormatNumber(row.dm),
             FormatNumber(row.radius), FormatNumber(value(row.ap_exact)),
             FormatNumber(value(row.ap_pruned)), FormatNumber(value(row.error)),
             FormatNumber(value(row.cost_exact)),
             FormatNumber(value(row.cost_pruned)),
             absl::StrCat(row.constraints_exact),
             absl::StrCat(row.constraints_pruned), row.status,
             absl::StrFormat("%.3f", row.seconds_exact),
             absl::StrFormat("%.3f", row.seconds_pruned)});
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

absl::StatusOr<CsvTable> RunExperiment(const std::string& name,
                                       const ExperimentConfig& config) {
  auto table = [](auto result) -> absl::StatusOr<CsvTable> {
    if (!result.ok()) return result.status();
    return std::move(result->table);
  };
  if (name == "scenario1") return table(RunScenario1(config));
  if (name == "scenario2") return table(RunScenario2(config));
  if (name == "scenario3") return table(RunScenario3(config));
  if (name == "prior") return table(RunPriorMismatch(config));
  if (name == "approx") return table(RunApproxSweep(config));
  return InvalidArgumentError(absl::StrCat(
      "unknown experiment \"", name,
      "\" (expected scenario1, scenario2, scenario3, prior or approx)"));
}

}  // namespace privgame::harness
