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

#include "privgame/privgame.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "privgame/attack/attack.h"
#include "privgame/common/errors.h"
#include "privgame/core/json_io.h"
#include "privgame/core/metrics.h"
#include "privgame/core/model.h"
#include "privgame/geo/grid.h"
#include "privgame/geo/trace.h"
#include "privgame/harness/experiments.h"
#include "privgame/mechanism/mechanism.h"

struct pg_prior {
  privgame::Prior value;
};
struct pg_metrics {
  privgame::MetricSet value;
};
struct pg_mechanism {
  privgame::Mechanism value;
  // Present for mechanisms built by the library.
  std::optional<privgame::MechanismResult> build;
};
struct pg_attack {
  privgame::Attack value;
};
struct pg_grid {
  privgame::geo::Grid value;
};
struct pg_experiment {
  privgame::harness::ExperimentConfig config;
};

namespace {

using privgame::ErrorKind;

thread_local std::string last_error;

pg_status StatusFromKind(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNone:
      return PG_OK;
    case ErrorKind::kInvalidArgument:
      return PG_INVALID_ARGUMENT;
    case ErrorKind::kDimensionMismatch:
      return PG_DIMENSION_MISMATCH;
    case ErrorKind::kUnknownLabel:
      return PG_UNKNOWN_LABEL;
    case ErrorKind::kInfeasible:
      return PG_INFEASIBLE;
    case ErrorKind::kInfeasibleAfterPruning:
      return PG_INFEASIBLE_AFTER_PRUNING;
    case ErrorKind::kUnbounded:
      return PG_UNBOUNDED;
    case ErrorKind::kSolverFailure:
      return PG_SOLVER_FAILURE;
    case ErrorKind::kNumericalFailure:
      return PG_NUMERICAL_FAILURE;
    case ErrorKind::kEmptyTrace:
      return PG_EMPTY_TRACE;
    case ErrorKind::kIo:
      return PG_IO;
    case ErrorKind::kParse:
      return PG_PARSE;
    case ErrorKind::kPostCheckFailed:
      return PG_POST_CHECK_FAILED;
  }
  return PG_INTERNAL;
}

pg_status Fail(pg_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

pg_status FromStatus(const absl::Status& status) {
  if (status.ok()) return PG_OK;
  const ErrorKind kind = privgame::ErrorKindOf(status);
  const pg_status code =
      kind == ErrorKind::kNone ? PG_INTERNAL : StatusFromKind(kind);
  return Fail(code, std::string(status.message()));
}

pg_status NullArgument(const char* name) {
  return Fail(PG_INVALID_ARGUMENT,
              absl::StrCat("InvalidArgument: ", name, " must not be NULL"));
}

// Runs `body`, turning escaped exceptions into PG_INTERNAL.
template <typename Body>
pg_status Guard(Body&& body) {
  try {
    return body();
  } catch (const std::bad_alloc&) {
    return Fail(PG_INTERNAL, "Internal: out of memory");
  } catch (const std::exception& e) {
    return Fail(PG_INTERNAL, absl::StrCat("Internal: ", e.what()));
  } catch (...) {
    return Fail(PG_INTERNAL, "Internal: unknown exception");
  }
}

char* CopyString(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

pg_status OutputString(const std::string& text, char** out) {
  if (out == nullptr) return NullArgument("out");
  *out = CopyString(text);
  return PG_OK;
}

// Stores the value of `result` in a new handle of type Handle.
template <typename Handle, typename T>
pg_status OutputHandle(absl::StatusOr<T> result, Handle** out) {
  if (!result.ok()) return FromStatus(result.status());
  *out = new Handle{std::move(result).value()};
  return PG_OK;
}

absl::StatusOr<privgame::BuildOptions> ToBuildOptions(
    const pg_build_options* options) {
  privgame::BuildOptions build;
  if (options == nullptr) return build;
  if (options->has_prune_eps) build.approx.radius_disting = options->prune_eps;
  if (options->has_prune_support) {
    build.approx.radius_support = options->prune_support;
  }
  if (options->dump_lp_path != nullptr) {
    build.dump_lp_path = options->dump_lp_path;
  }
  PRIVGAME_RETURN_IF_ERROR(build.approx.Validate());
  return build;
}

privgame::CostObjective ToObjective(const pg_build_options* options) {
  return options != nullptr && options->objective == PG_OBJECTIVE_WORST
             ? privgame::CostObjective::kWorst
             : privgame::CostObjective::kAverage;
}

pg_status RequireAverage(const pg_build_options* options) {
  if (options != nullptr && options->objective != PG_OBJECTIVE_AVERAGE) {
    return Fail(PG_INVALID_ARGUMENT,
                "InvalidArgument: differential mechanisms minimize the "
                "average cost only");
  }
  return PG_OK;
}

pg_status OutputMechanism(absl::StatusOr<privgame::MechanismResult> result,
                          pg_mechanism** out) {
  if (!result.ok()) return FromStatus(result.status());
  privgame::Mechanism mech = result->mechanism;
  *out = new pg_mechanism{std::move(mech), std::move(result).value()};
  return PG_OK;
}

std::vector<double>* LadderField(privgame::harness::ExperimentConfig& config,
                                 const std::string& name) {
  if (name == "eps") return &config.eps_ladder;
  if (name == "dm") return &config.dm_ladder;
  if (name == "offsets") return &config.dm_offsets;
  if (name == "betas") return &config.sharpen_betas;
  if (name == "radius") return &config.radius_ladder;
  return nullptr;
}

pg_status UnknownLadder(const char* name) {
  return Fail(PG_INVALID_ARGUMENT,
              absl::StrCat("InvalidArgument: unknown ladder \"", name,
                           "\" (expected eps, dm, offsets, betas or radius)"));
}

}  // namespace

extern "C" {

const char* pg_last_error(void) { return last_error.c_str(); }

const char* pg_status_name(pg_status status) {
  switch (status) {
    case PG_OK:
      return "OK";
    case PG_INVALID_ARGUMENT:
      return "InvalidArgument";
    case PG_DIMENSION_MISMATCH:
      return "DimensionMismatch";
    case PG_UNKNOWN_LABEL:
      return "UnknownLabel";
    case PG_INFEASIBLE:
      return "Infeasible";
    case PG_INFEASIBLE_AFTER_PRUNING:
      return "InfeasibleAfterPruning";
    case PG_UNBOUNDED:
      return "Unbounded";
    case PG_SOLVER_FAILURE:
      return "SolverFailure";
    case PG_NUMERICAL_FAILURE:
      return "NumericalFailure";
    case PG_EMPTY_TRACE:
      return "EmptyTrace";
    case PG_IO:
      return "Io";
    case PG_PARSE:
      return "Parse";
    case PG_POST_CHECK_FAILED:
      return "PostCheckFailed";
    case PG_INTERNAL:
      return "Internal";
  }
  return "Unknown";
}

const char* pg_version(void) { return "1.0.0"; }

void pg_string_free(char* str) { std::free(str); }

pg_status pg_read_file(const char* path, char** out) {
  return Guard([&] {
    if (path == nullptr) return NullArgument("path");
    if (out == nullptr) return NullArgument("out");
    absl::StatusOr<std::string> text = privgame::ReadTextFile(path);
    if (!text.ok()) return FromStatus(text.status());
    return OutputString(*text, out);
  });
}

pg_status pg_write_file(const char* path, const char* text) {
  return Guard([&] {
    if (path == nullptr) return NullArgument("path");
    if (text == nullptr) return NullArgument("text");
    return FromStatus(privgame::WriteTextFile(path, text));
  });
}

// Priors.

pg_status pg_prior_from_json(const char* json, pg_prior** out) {
  return Guard([&] {
    if (json == nullptr) return NullArgument("json");
    if (out == nullptr) return NullArgument("out");
    return OutputHandle(privgame::ParsePriorJson(json), out);
  });
}

pg_status pg_prior_create(const double* probs, size_t n, pg_prior** out) {
  return Guard([&] {
    if (probs == nullptr && n > 0) return NullArgument("probs");
    if (out == nullptr) return NullArgument("out");
    return OutputHandle(
        privgame::Prior::Create(
            privgame::LabelSpace::Indexed(static_cast<int>(n),
                                          privgame::Role::kSecrets),
            std::vector<double>(probs, probs + n)),
        out);
  });
}

pg_status pg_prior_uniform(size_t n, pg_prior** out) {
  return Guard([&] {
    if (out == nullptr) return NullArgument("out");
    if (n == 0) {
      return Fail(PG_INVALID_ARGUMENT,
                  "InvalidArgument: a prior needs at least one secret");
    }
    *out = new pg_prior{privgame::Prior::Uniform(privgame::LabelSpace::Indexed(
        static_cast<int>(n), privgame::Role::kSecrets))};
    return PG_OK;
  });
}

size_t pg_prior_size(const pg_prior* prior) {
  return prior == nullptr ? 0 : static_cast<size_t>(prior->value.size());
}

double pg_prior_prob(const pg_prior* prior, size_t s) {
  if (prior == nullptr || s >= pg_prior_size(prior)) return 0.0;
  return prior->value[static_cast<int>(s)];
}

double pg_prior_entropy(const pg_prior* prior) {
  return prior == nullptr ? 0.0 : prior->value.Entropy();
}

pg_status pg_prior_to_json(const pg_prior* prior, char** out) {
  return Guard([&] {
    if (prior == nullptr) return NullArgument("prior");
    return OutputString(privgame::PriorToJson(prior->value), out);
  });
}

pg_status pg_prior_sharpen(const pg_prior* prior, int k, double beta,
                           pg_prior** out) {
  return Guard([&] {
    if (prior == nullptr) return NullArgument("prior");
    if (out == nullptr) return NullArgument("out");
    return OutputHandle(privgame::geo::SharpenPrior(prior->value, k, beta),
                        out);
  });
}

void pg_prior_free(pg_prior* prior) { delete prior; }

// Metrics.

pg_status pg_metrics_from_json(const char* json, pg_metrics** out) {
  return Guard([&] {
    if (json == nullptr) return NullArgument("json");
    if (out == nullptr) return NullArgument("out");
    return OutputHandle(privgame::ParseMetricSetJson(json), out);
  });
}

pg_status pg_metrics_to_json(const pg_metrics* metrics, char** out) {
  return Guard([&] {
    if (metrics == nullptr) return NullArgument("metrics");
    return OutputString(privgame::MetricSetToJson(metrics->value), out);
  });
}

size_t pg_metrics_num_secrets(const pg_metrics* metrics) {
  return metrics == nullptr ? 0 : metrics->value.num_secrets();
}

size_t pg_metrics_num_observables(const pg_metrics* metrics) {
  return metrics == nullptr ? 0 : metrics->value.num_observables();
}

void pg_metrics_free(pg_metrics* metrics) { delete metrics; }

// Grids.

pg_status pg_grid_create(int nx, int ny, double width_km, double height_km,
                         pg_grid** out) {
  return Guard([&] {
    if (out == nullptr) return NullArgument("out");
    return OutputHandle(
        privgame::geo::Grid::Create(nx, ny, width_km, height_km), out);
  });
}

pg_status pg_grid_from_json(const char* json, pg_grid** out) {
  return Guard([&] {
    if (json == nullptr) return NullArgument("json");
    if (out == nullptr) return NullArgument("out");
    return OutputHandle(privgame::geo::ParseGridJson(json), out);
  });
}

pg_status pg_grid_to_json(const pg_grid* grid, char** out) {
  return Guard([&] {
    if (grid == nullptr) return NullArgument("grid");
    return OutputString(privgame::geo::GridToJson(grid->value), out);
  });
}

size_t pg_grid_num_cells(const pg_grid* grid) {
  return grid == nullptr ? 0 : grid->value.num_cells();
}

double pg_grid_diameter(const pg_grid* grid) {
  return grid == nullptr ? 0.0 : grid->value.Diameter();
}

pg_status pg_grid_location_metrics(const pg_grid* grid, pg_metrics** out) {
  return Guard([&] {
    if (grid == nullptr) return NullArgument("grid");
    if (out == nullptr) return NullArgument("out");
    *out = new pg_metrics{privgame::geo::LocationMetrics(grid->value)};
    return PG_OK;
  });
}

pg_status pg_grid_synthetic_prior(const pg_grid* grid, int length,
                                  uint64_t seed, double smoothing,
                                  pg_prior** out) {
  return Guard([&] {
    if (grid == nullptr) return NullArgument("grid");
    if (out == nullptr) return NullArgument("out");
    if (length < 0) {
      return Fail(PG_INVALID_ARGUMENT,
                  "InvalidArgument: trace length must be >= 0");
    }
    const privgame::geo::Trace trace =
        privgame::geo::SyntheticTrace(grid->value, length, seed);
    return OutputHandle(
        privgame::geo::PriorFromTrace(trace, grid->value, smoothing), out);
  });
}

pg_status pg_grid_synthetic_trace_csv(const pg_grid* grid, int length,
                                      uint64_t seed, const char* user_id,
                                      char** out) {
  return Guard([&] {
    if (grid == nullptr) return NullArgument("grid");
    if (length < 0) {
      return Fail(PG_INVALID_ARGUMENT,
                  "InvalidArgument: trace length must be >= 0");
    }
    const privgame::geo::Trace trace = privgame::geo::SyntheticTrace(
        grid->value, length, seed, {}, user_id == nullptr ? "user" : user_id);
    return OutputString(privgame::geo::TracesToCsv({trace}), out);
  });
}

pg_status pg_grid_prior_from_trace_csv(const pg_grid* grid, const char* csv,
                                       const char* user_id, double smoothing,
                                       pg_prior** out) {
  return Guard([&] {
    if (grid == nullptr) return NullArgument("grid");
    if (csv == nullptr) return NullArgument("csv");
    if (user_id == nullptr) return NullArgument("user_id");
    if (out == nullptr) return NullArgument("out");
    absl::StatusOr<std::vector<privgame::geo::Trace>> traces =
        privgame::geo::ParseTraceCsv(csv, grid->value);
    if (!traces.ok()) return FromStatus(traces.status());
    privgame::geo::Trace selected{user_id, {}};
    for (const privgame::geo::Trace& trace : *traces) {
      if (trace.user_id == user_id) selected = trace;
    }
    return OutputHandle(
        privgame::geo::PriorFromTrace(selected, grid->value, smoothing), out);
  });
}

void pg_grid_free(pg_grid* grid) { delete grid; }

// Mechanisms.

void pg_build_options_init(pg_build_options* options) {
  if (options == nullptr) return;
  options->objective = PG_OBJECTIVE_AVERAGE;
  options->has_prune_eps = 0;
  options->prune_eps = 0.0;
  options->has_prune_support = 0;
  options->prune_support = 0.0;
  options->dump_lp_path = nullptr;
}

pg_status pg_mechanism_distortion(const pg_prior* prior,
                                  const pg_metrics* metrics, double dm,
                                  const pg_build_options* options,
                                  pg_mechanism** out) {
  return Guard([&] {
    if (prior == nullptr) return NullArgument("prior");
    if (metrics == nullptr) return NullArgument("metrics");
    if (out == nullptr) return NullArgument("out");
    absl::StatusOr<privgame::BuildOptions> build = ToBuildOptions(options);
    if (!build.ok()) return FromStatus(build.status());
    return OutputMechanism(
        privgame::OptimalDistortion(prior->value, metrics->value, dm,
                                    ToObjective(options), *build),
        out);
  });
}

pg_status pg_mechanism_differential(const pg_prior* prior,
                                    const pg_metrics* metrics, double eps,
                                    const pg_build_options* options,
                                    pg_mechanism** out) {
  return Guard([&] {
    if (prior == nullptr) return NullArgument("prior");
    if (metrics == nullptr) return NullArgument("metrics");
    if (out == nullptr) return NullArgument("out");
    if (pg_status s = RequireAverage(options); s != PG_OK) return s;
    absl::StatusOr<privgame::BuildOptions> build = ToBuildOptions(options);
    if (!build.ok()) return FromStatus(build.status());
    return OutputMechanism(privgame::OptimalDifferential(
                               prior->value, metrics->value, eps, *build),
                           out);
  });
}

pg_status pg_mechanism_differential_thresholded(
    const pg_prior* prior, const pg_metrics* metrics, double eps,
    double d_eps, const pg_build_options* options, pg_mechanism** out) {
  return Guard([&] {
    if (prior == nullptr) return NullArgument("prior");
    if (metrics == nullptr) return NullArgument("metrics");
    if (out == nullptr) return NullArgument("out");
    if (pg_status s = RequireAverage(options); s != PG_OK) return s;
    absl::StatusOr<privgame::BuildOptions> build = ToBuildOptions(options);
    if (!build.ok()) return FromStatus(build.status());
    return OutputMechanism(
        privgame::OptimalDifferentialThresholded(prior->value, metrics->value,
                                                 eps, d_eps, *build),
        out);
  });
}

pg_status pg_mechanism_joint(const pg_prior* prior, const pg_metrics* metrics,
                             double dm, double eps,
                             const pg_build_options* options,
                             pg_mechanism** out) {
  return Guard([&] {
    if (prior == nullptr) return NullArgument("prior");
    if (metrics == nullptr) return NullArgument("metrics");
    if (out == nullptr) return NullArgument("out");
    if (pg_status s = RequireAverage(options); s != PG_OK) return s;
    absl::StatusOr<privgame::BuildOptions> build = ToBuildOptions(options);
    if (!build.ok()) return FromStatus(build.status());
    return OutputMechanism(privgame::OptimalJoint(prior->value, metrics->value,
                                                  dm, eps, *build),
                           out);
  });
}

pg_status pg_max_distortion(const pg_prior* prior, const pg_metrics* metrics,
                            double* out) {
  return Guard([&] {
    if (prior == nullptr) return NullArgument("prior");
    if (metrics == nullptr) return NullArgument("metrics");
    if (out == nullptr) return NullArgument("out");
    absl::StatusOr<double> value =
        privgame::MaxDistortion(prior->value, metrics->value);
    if (!value.ok()) return FromStatus(value.status());
    *out = *value;
    return PG_OK;
  });
}

pg_status pg_mechanism_from_json(const char* json, pg_mechanism** out) {
  return Guard([&] {
    if (json == nullptr) return NullArgument("json");
    if (out == nullptr) return NullArgument("out");
    absl::StatusOr<privgame::Mechanism> mech =
        privgame::ParseMechanismJson(json);
    if (!mech.ok()) return FromStatus(mech.status());
    *out = new pg_mechanism{std::move(mech).value(), std::nullopt};
    return PG_OK;
  });
}

pg_status pg_mechanism_to_json(const pg_mechanism* mech, char** out) {
  return Guard([&] {
    if (mech == nullptr) return NullArgument("mech");
    return OutputString(privgame::MechanismToJson(mech->value), out);
  });
}

pg_mechanism* pg_mechanism_identity(size_t n) {
  try {
    if (n == 0) return nullptr;
    return new pg_mechanism{
        privgame::Mechanism::Identity(privgame::LabelSpace::Indexed(
            static_cast<int>(n), privgame::Role::kSecrets)),
        std::nullopt};
  } catch (...) {
    return nullptr;
  }
}

size_t pg_mechanism_num_secrets(const pg_mechanism* mech) {
  return mech == nullptr ? 0 : mech->value.num_rows();
}

size_t pg_mechanism_num_observables(const pg_mechanism* mech) {
  return mech == nullptr ? 0 : mech->value.num_cols();
}

double pg_mechanism_prob(const pg_mechanism* mech, size_t s, size_t o) {
  if (mech == nullptr || s >= pg_mechanism_num_secrets(mech) ||
      o >= pg_mechanism_num_observables(mech)) {
    return 0.0;
  }
  return mech->value(static_cast<int>(s), static_cast<int>(o));
}

pg_status pg_mechanism_summary_json(const pg_mechanism* mech, char** out) {
  return Guard([&] {
    if (mech == nullptr) return NullArgument("mech");
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    if (mech->build.has_value()) {
      const privgame::MechanismResult& r = *mech->build;
      doc["objective"] = r.objective;
      doc["cost"] = r.cost;
      doc["privacy"] = r.privacy;
      doc["repair_weight"] = r.repair_weight;
      doc["lp_variables"] = r.lp_variables;
      doc["lp_constraints"] = r.lp_constraints;
      doc["solve_seconds"] = r.solve_seconds;
      if (r.differential.has_value()) {
        doc["differential"] = {
            {"passed", r.differential->passed},
            {"margin", r.differential->margin},
            {"pairs_checked", r.differential->pairs_checked}};
      }
    }
    return OutputString(doc.dump(2) + "\n", out);
  });
}

double pg_mechanism_cost(const pg_mechanism* mech) {
  return mech != nullptr && mech->build.has_value() ? mech->build->cost : 0.0;
}

double pg_mechanism_privacy(const pg_mechanism* mech) {
  return mech != nullptr && mech->build.has_value() ? mech->build->privacy
                                                    : 0.0;
}

void pg_mechanism_free(pg_mechanism* mech) { delete mech; }

// Attacks.

pg_status pg_attack_build(pg_attack_kind kind, const pg_prior* prior,
                          const pg_mechanism* mech, const pg_metrics* metrics,
                          pg_attack** out, double* objective) {
  return Guard([&] {
    if (mech == nullptr) return NullArgument("mech");
    if (metrics == nullptr && kind != PG_ATTACK_BAYES) {
      return NullArgument("metrics");
    }
    if (out == nullptr) return NullArgument("out");
    const bool needs_prior = kind == PG_ATTACK_OPTIMAL ||
                             kind == PG_ATTACK_OPTIMAL_CLOSED_FORM ||
                             kind == PG_ATTACK_BAYES;
    if (needs_prior && prior == nullptr) return NullArgument("prior");
    absl::StatusOr<privgame::AttackResult> result =
        absl::InternalError("unset");
    switch (kind) {
      case PG_ATTACK_OPTIMAL:
        result = privgame::OptimalAttack(prior->value, mech->value,
                                         metrics->value);
        break;
      case PG_ATTACK_OPTIMAL_CLOSED_FORM:
      case PG_ATTACK_BAYES: {
        absl::StatusOr<privgame::Attack> attack = absl::InternalError("unset");
        if (kind == PG_ATTACK_BAYES) {
          absl::StatusOr<privgame::BayesAttackResult> bayes =
              privgame::BayesAttack(prior->value, mech->value);
          if (!bayes.ok()) return FromStatus(bayes.status());
          attack = std::move(bayes->attack);
        } else {
          attack = privgame::OptimalAttackClosedForm(prior->value, mech->value,
                                                     metrics->value);
        }
        if (!attack.ok()) return FromStatus(attack.status());
        double value = 0.0;
        if (metrics != nullptr) {
          absl::StatusOr<double> privacy = privgame::ExpectedPrivacy(
              prior->value, mech->value, *attack, metrics->value);
          if (!privacy.ok()) return FromStatus(privacy.status());
          value = *privacy;
        }
        result = privgame::AttackResult{std::move(attack).value(), value};
        break;
      }
      case PG_ATTACK_MINIMAX_SUM:
        result = privgame::MinimaxAttackSum(mech->value, metrics->value);
        break;
      case PG_ATTACK_MINIMAX:
        result = privgame::MinimaxAttack(mech->value, metrics->value);
        break;
      case PG_ATTACK_MINIMAX_PAIRWISE:
        result = privgame::MinimaxAttackPairwise(mech->value, metrics->value);
        break;
      default:
        return Fail(PG_INVALID_ARGUMENT,
                    "InvalidArgument: unknown attack kind");
    }
    if (!result.ok()) return FromStatus(result.status());
    if (objective != nullptr) *objective = result->objective;
    *out = new pg_attack{std::move(result->attack)};
    return PG_OK;
  });
}

pg_status pg_attack_from_json(const char* json, pg_attack** out) {
  return Guard([&] {
    if (json == nullptr) return NullArgument("json");
    if (out == nullptr) return NullArgument("out");
    return OutputHandle(privgame::ParseAttackJson(json), out);
  });
}

pg_status pg_attack_to_json(const pg_attack* attack, char** out) {
  return Guard([&] {
    if (attack == nullptr) return NullArgument("attack");
    return OutputString(privgame::AttackToJson(attack->value), out);
  });
}

double pg_attack_prob(const pg_attack* attack, size_t o, size_t s) {
  if (attack == nullptr ||
      o >= static_cast<size_t>(attack->value.num_rows()) ||
      s >= static_cast<size_t>(attack->value.num_cols())) {
    return 0.0;
  }
  return attack->value(static_cast<int>(o), static_cast<int>(s));
}

void pg_attack_free(pg_attack* attack) { delete attack; }

// Evaluation.

pg_status pg_expected_cost(const pg_prior* prior, const pg_mechanism* mech,
                           const pg_metrics* metrics, double* out) {
  return Guard([&] {
    if (prior == nullptr) return NullArgument("prior");
    if (mech == nullptr) return NullArgument("mech");
    if (metrics == nullptr) return NullArgument("metrics");
    if (out == nullptr) return NullArgument("out");
    absl::StatusOr<double> value =
        privgame::ExpectedCost(prior->value, mech->value, metrics->value);
    if (!value.ok()) return FromStatus(value.status());
    *out = *value;
    return PG_OK;
  });
}

pg_status pg_worst_case_cost(const pg_mechanism* mech,
                             const pg_metrics* metrics, double* out) {
  return Guard([&] {
    if (mech == nullptr) return NullArgument("mech");
    if (metrics == nullptr) return NullArgument("metrics");
    if (out == nullptr) return NullArgument("out");
    absl::StatusOr<double> value =
        privgame::WorstCaseCost(mech->value, metrics->value);
    if (!value.ok()) return FromStatus(value.status());
    *out = *value;
    return PG_OK;
  });
}

pg_status pg_expected_privacy(const pg_prior* prior, const pg_mechanism* mech,
                              const pg_attack* attack,
                              const pg_metrics* metrics, double* out) {
  return Guard([&] {
    if (prior == nullptr) return NullArgument("prior");
    if (mech == nullptr) return NullArgument("mech");
    if (attack == nullptr) return NullArgument("attack");
    if (metrics == nullptr) return NullArgument("metrics");
    if (out == nullptr) return NullArgument("out");
    absl::StatusOr<double> value = privgame::ExpectedPrivacy(
        prior->value, mech->value, attack->value, metrics->value);
    if (!value.ok()) return FromStatus(value.status());
    *out = *value;
    return PG_OK;
  });
}

pg_status pg_verify_differential(const pg_mechanism* mech,
                                 const pg_metrics* metrics, double eps,
                                 int has_d_eps, double d_eps, int* passed,
                                 double* margin) {
  return Guard([&] {
    if (mech == nullptr) return NullArgument("mech");
    if (metrics == nullptr) return NullArgument("metrics");
    if (passed == nullptr) return NullArgument("passed");
    std::optional<double> threshold;
    if (has_d_eps) threshold = d_eps;
    absl::StatusOr<privgame::DifferentialReport> report =
        privgame::VerifyDifferential(mech->value, metrics->value, eps,
                                     threshold);
    if (!report.ok()) return FromStatus(report.status());
    *passed = report->passed ? 1 : 0;
    if (margin != nullptr) *margin = report->margin;
    return PG_OK;
  });
}

// Experiments.

pg_status pg_experiment_create(pg_experiment** out) {
  return Guard([&] {
    if (out == nullptr) return NullArgument("out");
    *out = new pg_experiment{};
    return PG_OK;
  });
}

pg_status pg_experiment_set_grid(pg_experiment* exp, const pg_grid* grid) {
  if (exp == nullptr) return NullArgument("exp");
  if (grid == nullptr) return NullArgument("grid");
  exp->config.grid = grid->value;
  return PG_OK;
}

pg_status pg_experiment_set_users(pg_experiment* exp, int users) {
  if (exp == nullptr) return NullArgument("exp");
  if (users < 1) {
    return Fail(PG_INVALID_ARGUMENT, "InvalidArgument: users must be >= 1");
  }
  exp->config.users = users;
  return PG_OK;
}

pg_status pg_experiment_set_seed(pg_experiment* exp, uint64_t seed) {
  if (exp == nullptr) return NullArgument("exp");
  exp->config.seed = seed;
  return PG_OK;
}

pg_status pg_experiment_set_trace_length(pg_experiment* exp, int length) {
  if (exp == nullptr) return NullArgument("exp");
  if (length < 1) {
    return Fail(PG_INVALID_ARGUMENT,
                "InvalidArgument: trace length must be >= 1");
  }
  exp->config.trace_length = length;
  return PG_OK;
}

pg_status pg_experiment_set_objective(pg_experiment* exp,
                                      pg_objective objective) {
  if (exp == nullptr) return NullArgument("exp");
  exp->config.objective = objective == PG_OBJECTIVE_WORST
                              ? privgame::CostObjective::kWorst
                              : privgame::CostObjective::kAverage;
  return PG_OK;
}

pg_status pg_experiment_set_ladder(pg_experiment* exp, const char* ladder,
                                   const char* text) {
  return Guard([&] {
    if (exp == nullptr) return NullArgument("exp");
    if (ladder == nullptr) return NullArgument("ladder");
    if (text == nullptr) return NullArgument("text");
    std::vector<double>* field = LadderField(exp->config, ladder);
    if (field == nullptr) return UnknownLadder(ladder);
    absl::StatusOr<std::vector<double>> values =
        privgame::harness::ParseLadder(text);
    if (!values.ok()) return FromStatus(values.status());
    *field = std::move(values).value();
    return PG_OK;
  });
}

pg_status pg_experiment_set_ladder_values(pg_experiment* exp,
                                          const char* ladder,
                                          const double* values, size_t n) {
  return Guard([&] {
    if (exp == nullptr) return NullArgument("exp");
    if (ladder == nullptr) return NullArgument("ladder");
    if (values == nullptr && n > 0) return NullArgument("values");
    std::vector<double>* field = LadderField(exp->config, ladder);
    if (field == nullptr) return UnknownLadder(ladder);
    field->assign(values, values + n);
    return PG_OK;
  });
}

pg_status pg_experiment_set_sharpen_k(pg_experiment* exp, int k) {
  if (exp == nullptr) return NullArgument("exp");
  exp->config.sharpen_k = k;
  return PG_OK;
}

pg_status pg_experiment_set_approx_dm(pg_experiment* exp, double dm) {
  if (exp == nullptr) return NullArgument("exp");
  exp->config.approx_dm = dm;
  return PG_OK;
}

pg_status pg_experiment_set_approx_support_radius(pg_experiment* exp,
                                                  double radius) {
  if (exp == nullptr) return NullArgument("exp");
  exp->config.approx_support_radius = radius;
  return PG_OK;
}

pg_status pg_experiment_run(const pg_experiment* exp, const char* name,
                            char** csv_out) {
  return Guard([&] {
    if (exp == nullptr) return NullArgument("exp");
    if (name == nullptr) return NullArgument("name");
    if (csv_out == nullptr) return NullArgument("csv_out");
    absl::StatusOr<privgame::harness::CsvTable> table =
        privgame::harness::RunExperiment(name, exp->config);
    if (!table.ok()) return FromStatus(table.status());
    return OutputString(table->ToString(), csv_out);
  });
}

void pg_experiment_free(pg_experiment* exp) { delete exp; }

}  // extern "C"
