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

// Command-line front end over the privgame C interface.
//
//   privgame mechanism {distortion|differential|differential-thresh|joint|dmax}
//   privgame experiment {scenario1|scenario2|scenario3|prior|approx}
//   privgame attack {optimal|closed-form|bayes|minimax-sum|minimax|
//                    minimax-pairwise}
//   privgame evaluate | metrics | prior | trace
//
// Exit status: 0 on success, the pg_status code of a library failure
// (1-13), or 64 for command-line usage errors.

#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "privgame/privgame.h"

namespace {

constexpr int kUsageExit = 64;

// Carries a library failure up to main().
struct Failure {
  pg_status status;
};

void Check(pg_status status) {
  if (status != PG_OK) throw Failure{status};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using PriorPtr = std::unique_ptr<pg_prior, Deleter<pg_prior, pg_prior_free>>;
using MetricsPtr =
    std::unique_ptr<pg_metrics, Deleter<pg_metrics, pg_metrics_free>>;
using MechanismPtr =
    std::unique_ptr<pg_mechanism, Deleter<pg_mechanism, pg_mechanism_free>>;
using AttackPtr = std::unique_ptr<pg_attack, Deleter<pg_attack, pg_attack_free>>;
using GridPtr = std::unique_ptr<pg_grid, Deleter<pg_grid, pg_grid_free>>;
using ExperimentPtr =
    std::unique_ptr<pg_experiment, Deleter<pg_experiment, pg_experiment_free>>;

std::string TakeString(char* raw) {
  std::string out = raw == nullptr ? "" : raw;
  pg_string_free(raw);
  return out;
}

// Inline JSON when the argument starts with '{', otherwise a file path.
std::string JsonArgument(const std::string& arg) {
  const size_t first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  char* text = nullptr;
  Check(pg_read_file(arg.c_str(), &text));
  return TakeString(text);
}

void Emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fputs(text.c_str(), stdout);
  } else {
    Check(pg_write_file(path.c_str(), text.c_str()));
  }
}

PriorPtr LoadPrior(const std::string& arg) {
  pg_prior* prior = nullptr;
  Check(pg_prior_from_json(JsonArgument(arg).c_str(), &prior));
  return PriorPtr(prior);
}

GridPtr LoadGrid(const std::string& arg) {
  pg_grid* grid = nullptr;
  Check(pg_grid_from_json(JsonArgument(arg).c_str(), &grid));
  return GridPtr(grid);
}

MetricsPtr LoadMetrics(const std::string& metrics_arg,
                       const std::string& grid_arg) {
  pg_metrics* metrics = nullptr;
  if (!metrics_arg.empty()) {
    Check(pg_metrics_from_json(JsonArgument(metrics_arg).c_str(), &metrics));
  } else {
    GridPtr grid = LoadGrid(grid_arg);
    Check(pg_grid_location_metrics(grid.get(), &metrics));
  }
  return MetricsPtr(metrics);
}

MechanismPtr LoadMechanism(const std::string& arg) {
  pg_mechanism* mech = nullptr;
  Check(pg_mechanism_from_json(JsonArgument(arg).c_str(), &mech));
  return MechanismPtr(mech);
}

std::string Number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", value);
  return buffer;
}

// ---------------------------------------------------------------------

struct MechanismArgs {
  std::string prior;
  std::string metrics;
  std::string grid;
  std::optional<double> dm;
  std::optional<double> eps;
  std::optional<double> deps;
  std::string objective = "avg";
  std::optional<double> prune_eps;
  std::optional<double> prune_support;
  std::string out;
  std::string summary;
  std::string dump_lp;
};

double Require(const std::optional<double>& value, const char* flag,
               const std::string& kind) {
  if (!value.has_value()) {
    throw CLI::ValidationError(flag, "required by " + kind);
  }
  return *value;
}

void RunMechanism(const std::string& kind, const MechanismArgs& args) {
  PriorPtr prior = LoadPrior(args.prior);
  MetricsPtr metrics = LoadMetrics(args.metrics, args.grid);
  if (kind == "dmax") {
    double value = 0.0;
    Check(pg_max_distortion(prior.get(), metrics.get(), &value));
    Emit("{\"dm_max\": " + Number(value) + "}\n", args.out);
    return;
  }
  pg_build_options options;
  pg_build_options_init(&options);
  options.objective =
      args.objective == "worst" ? PG_OBJECTIVE_WORST : PG_OBJECTIVE_AVERAGE;
  if (args.prune_eps) {
    options.has_prune_eps = 1;
    options.prune_eps = *args.prune_eps;
  }
  if (args.prune_support) {
    options.has_prune_support = 1;
    options.prune_support = *args.prune_support;
  }
  if (!args.dump_lp.empty()) options.dump_lp_path = args.dump_lp.c_str();

  pg_mechanism* raw = nullptr;
  if (kind == "distortion") {
    Check(pg_mechanism_distortion(prior.get(), metrics.get(),
                                  Require(args.dm, "--dm", kind), &options,
                                  &raw));
  } else if (kind == "differential") {
    Check(pg_mechanism_differential(prior.get(), metrics.get(),
                                    Require(args.eps, "--eps", kind), &options,
                                    &raw));
  } else if (kind == "differential-thresh") {
    Check(pg_mechanism_differential_thresholded(
        prior.get(), metrics.get(), Require(args.eps, "--eps", kind),
        Require(args.deps, "--deps", kind), &options, &raw));
  } else {
    Check(pg_mechanism_joint(prior.get(), metrics.get(),
                             Require(args.dm, "--dm", kind),
                             Require(args.eps, "--eps", kind), &options, &raw));
  }
  MechanismPtr mech(raw);
  char* json = nullptr;
  Check(pg_mechanism_to_json(mech.get(), &json));
  Emit(TakeString(json), args.out);
  char* summary = nullptr;
  Check(pg_mechanism_summary_json(mech.get(), &summary));
  const std::string text = TakeString(summary);
  if (!args.summary.empty()) {
    Emit(text, args.summary);
  } else {
    std::fputs(text.c_str(), stderr);
  }
}

// ---------------------------------------------------------------------

struct ExperimentArgs {
  std::string grid;
  std::optional<int> users;
  std::optional<uint64_t> seed;
  std::optional<int> trace_length;
  std::string objective = "avg";
  std::map<std::string, std::string> ladders;
  std::optional<int> sharpen_k;
  std::optional<double> approx_dm;
  std::optional<double> prune_support;
  std::string out;
};

void RunExperiment(const std::string& name, const ExperimentArgs& args) {
  pg_experiment* raw = nullptr;
  Check(pg_experiment_create(&raw));
  ExperimentPtr exp(raw);
  if (!args.grid.empty()) {
    GridPtr grid = LoadGrid(args.grid);
    Check(pg_experiment_set_grid(exp.get(), grid.get()));
  }
  if (args.users) Check(pg_experiment_set_users(exp.get(), *args.users));
  if (args.seed) Check(pg_experiment_set_seed(exp.get(), *args.seed));
  if (args.trace_length) {
    Check(pg_experiment_set_trace_length(exp.get(), *args.trace_length));
  }
  Check(pg_experiment_set_objective(
      exp.get(),
      args.objective == "worst" ? PG_OBJECTIVE_WORST : PG_OBJECTIVE_AVERAGE));
  for (const auto& [ladder, text] : args.ladders) {
    if (!text.empty()) {
      Check(pg_experiment_set_ladder(exp.get(), ladder.c_str(), text.c_str()));
    }
  }
  if (args.sharpen_k) Check(pg_experiment_set_sharpen_k(exp.get(), *args.sharpen_k));
  if (args.approx_dm) Check(pg_experiment_set_approx_dm(exp.get(), *args.approx_dm));
  if (args.prune_support) {
    Check(pg_experiment_set_approx_support_radius(exp.get(),
                                                  *args.prune_support));
  }
  char* csv = nullptr;
  Check(pg_experiment_run(exp.get(), name.c_str(), &csv));
  Emit(TakeString(csv), args.out);
}

// ---------------------------------------------------------------------

struct CommonArgs {
  std::string prior;
  std::string metrics;
  std::string grid;
  std::string mechanism;
  std::string attack;
  std::optional<double> eps;
  std::optional<double> deps;
  std::string out;
};

void RunAttack(const std::string& kind, const CommonArgs& args) {
  static const std::map<std::string, pg_attack_kind> kinds = {
      {"optimal", PG_ATTACK_OPTIMAL},
      {"closed-form", PG_ATTACK_OPTIMAL_CLOSED_FORM},
      {"bayes", PG_ATTACK_BAYES},
      {"minimax-sum", PG_ATTACK_MINIMAX_SUM},
      {"minimax", PG_ATTACK_MINIMAX},
      {"minimax-pairwise", PG_ATTACK_MINIMAX_PAIRWISE}};
  PriorPtr prior;
  if (!args.prior.empty()) prior = LoadPrior(args.prior);
  MetricsPtr metrics = LoadMetrics(args.metrics, args.grid);
  MechanismPtr mech = LoadMechanism(args.mechanism);
  pg_attack* raw = nullptr;
  double objective = 0.0;
  Check(pg_attack_build(kinds.at(kind), prior.get(), mech.get(), metrics.get(),
                        &raw, &objective));
  AttackPtr attack(raw);
  char* json = nullptr;
  Check(pg_attack_to_json(attack.get(), &json));
  Emit(TakeString(json), args.out);
  std::fprintf(stderr, "{\"objective\": %s}\n", Number(objective).c_str());
}

void RunEvaluate(const CommonArgs& args) {
  PriorPtr prior = LoadPrior(args.prior);
  MetricsPtr metrics = LoadMetrics(args.metrics, args.grid);
  MechanismPtr mech = LoadMechanism(args.mechanism);
  double expected_cost = 0.0;
  double worst_cost = 0.0;
  Check(pg_expected_cost(prior.get(), mech.get(), metrics.get(),
                         &expected_cost));
  Check(pg_worst_case_cost(mech.get(), metrics.get(), &worst_cost));
  std::string out = "{\n  \"expected_cost\": " + Number(expected_cost) +
                    ",\n  \"worst_case_cost\": " + Number(worst_cost);
  auto privacy_of = [&](pg_attack_kind kind) {
    pg_attack* raw = nullptr;
    Check(pg_attack_build(kind, prior.get(), mech.get(), metrics.get(), &raw,
                          nullptr));
    AttackPtr attack(raw);
    double value = 0.0;
    Check(pg_expected_privacy(prior.get(), mech.get(), attack.get(),
                              metrics.get(), &value));
    return value;
  };
  out += ",\n  \"privacy_optimal_attack\": " +
         Number(privacy_of(PG_ATTACK_OPTIMAL_CLOSED_FORM));
  out += ",\n  \"privacy_bayes_attack\": " +
         Number(privacy_of(PG_ATTACK_BAYES));
  if (!args.attack.empty()) {
    pg_attack* raw = nullptr;
    Check(pg_attack_from_json(JsonArgument(args.attack).c_str(), &raw));
    AttackPtr attack(raw);
    double value = 0.0;
    Check(pg_expected_privacy(prior.get(), mech.get(), attack.get(),
                              metrics.get(), &value));
    out += ",\n  \"privacy_given_attack\": " + Number(value);
  }
  if (args.eps) {
    int passed = 0;
    double margin = 0.0;
    Check(pg_verify_differential(mech.get(), metrics.get(), *args.eps,
                                 args.deps ? 1 : 0, args.deps.value_or(0.0),
                                 &passed, &margin));
    out += std::string(",\n  \"differential_passed\": ") +
           (passed ? "true" : "false") +
           ",\n  \"differential_margin\": " + Number(margin);
  }
  out += "\n}\n";
  Emit(out, args.out);
}

struct GeoArgs {
  std::string grid;
  std::string trace;
  std::string user = "user";
  std::optional<uint64_t> seed;
  int length = 500;
  double smoothing = 0.0;
  std::string out;
};

void RunMetrics(const GeoArgs& args) {
  GridPtr grid = LoadGrid(args.grid);
  pg_metrics* raw = nullptr;
  Check(pg_grid_location_metrics(grid.get(), &raw));
  MetricsPtr metrics(raw);
  char* json = nullptr;
  Check(pg_metrics_to_json(metrics.get(), &json));
  Emit(TakeString(json), args.out);
}

void RunPrior(const GeoArgs& args) {
  GridPtr grid = LoadGrid(args.grid);
  pg_prior* raw = nullptr;
  if (!args.trace.empty()) {
    char* csv = nullptr;
    Check(pg_read_file(args.trace.c_str(), &csv));
    const std::string text = TakeString(csv);
    Check(pg_grid_prior_from_trace_csv(grid.get(), text.c_str(),
                                       args.user.c_str(), args.smoothing,
                                       &raw));
  } else {
    Check(pg_grid_synthetic_prior(grid.get(), args.length, args.seed.value_or(1),
                                  args.smoothing, &raw));
  }
  PriorPtr prior(raw);
  char* json = nullptr;
  Check(pg_prior_to_json(prior.get(), &json));
  Emit(TakeString(json), args.out);
}

void RunTrace(const GeoArgs& args) {
  GridPtr grid = LoadGrid(args.grid);
  char* csv = nullptr;
  Check(pg_grid_synthetic_trace_csv(grid.get(), args.length,
                                    args.seed.value_or(1), args.user.c_str(),
                                    &csv));
  Emit(TakeString(csv), args.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal privacy-preserving obfuscation mechanisms"};
  app.set_version_flag("--version", std::string(pg_version()));
  app.require_subcommand(1);

  // mechanism
  MechanismArgs mech_args;
  CLI::App* mechanism = app.add_subcommand(
      "mechanism", "Build an optimal mechanism (JSON to --out or stdout; "
                   "statistics to stderr or --summary)");
  std::string mech_kind;
  mechanism
      ->add_option("kind", mech_kind,
                   "distortion, differential, differential-thresh, joint or "
                   "dmax")
      ->required()
      ->check(CLI::IsMember({"distortion", "differential",
                             "differential-thresh", "joint", "dmax"}));
  mechanism->add_option("--prior", mech_args.prior, "prior JSON (file or inline)")
      ->required();
  auto* metrics_opt = mechanism->add_option(
      "--metrics", mech_args.metrics, "metric tables JSON (file or inline)");
  auto* grid_opt = mechanism->add_option(
      "--grid", mech_args.grid, "grid JSON; uses the location metrics");
  metrics_opt->excludes(grid_opt);
  mechanism->add_option("--dm", mech_args.dm, "distortion threshold d_m");
  mechanism->add_option("--eps", mech_args.eps, "differential budget eps_m");
  mechanism->add_option("--deps", mech_args.deps,
                        "distinguishability threshold (differential-thresh)");
  mechanism->add_option("--objective", mech_args.objective, "avg or worst")
      ->check(CLI::IsMember({"avg", "worst"}));
  mechanism->add_option("--prune-eps", mech_args.prune_eps,
                        "drop differential constraints beyond this radius");
  mechanism->add_option("--prune-support", mech_args.prune_support,
                        "fix p(o|s) = 0 beyond this ground distance");
  mechanism->add_option("--out", mech_args.out, "output file (default stdout)");
  mechanism->add_option("--summary", mech_args.summary,
                        "write build statistics JSON here");
  mechanism->add_option("--dump-lp", mech_args.dump_lp,
                        "write the program in LP file format");

  // experiment
  ExperimentArgs exp_args;
  CLI::App* experiment = app.add_subcommand(
      "experiment", "Run a grid-world experiment and write CSV");
  std::string exp_name;
  experiment
      ->add_option("name", exp_name,
                   "scenario1, scenario2, scenario3, prior or approx")
      ->required()
      ->check(CLI::IsMember(
          {"scenario1", "scenario2", "scenario3", "prior", "approx"}));
  experiment->add_option("--grid", exp_args.grid,
                         "grid JSON (default 8x6 cells over 6x4 km)");
  experiment->add_option("--users", exp_args.users, "synthetic users (10)");
  experiment->add_option("--seed", exp_args.seed, "random seed (1)");
  experiment->add_option("--trace-length", exp_args.trace_length,
                         "visits per synthetic trace (500)");
  experiment->add_option("--objective", exp_args.objective, "avg or worst")
      ->check(CLI::IsMember({"avg", "worst"}));
  experiment->add_option("--eps-ladder", exp_args.ladders["eps"],
                         "eps_m values, start:stop:step");
  experiment->add_option("--dm-ladder", exp_args.ladders["dm"],
                         "scenario3 d_m values, start:stop:step");
  experiment->add_option("--offsets", exp_args.ladders["offsets"],
                         "scenario2 d_m offsets, start:stop:step");
  experiment->add_option("--betas", exp_args.ladders["betas"],
                         "prior study sharpening factors, start:stop:step");
  experiment->add_option("--sharpen-k", exp_args.sharpen_k,
                         "prior study: number of boosted cells (2)");
  experiment->add_option("--radius-ladder", exp_args.ladders["radius"],
                         "approx sweep radii in km, start:stop:step");
  experiment->add_option("--approx-dm", exp_args.approx_dm,
                         "approx sweep d_m (0 sweeps the differential "
                         "mechanism)");
  experiment->add_option("--prune-support", exp_args.prune_support,
                         "approx sweep fixed support radius");
  experiment->add_option("--out", exp_args.out, "CSV file (default stdout)");

  // attack, evaluate
  CommonArgs common;
  CLI::App* attack = app.add_subcommand(
      "attack", "Build an inference attack against a mechanism");
  std::string attack_kind;
  attack
      ->add_option("kind", attack_kind,
                   "optimal, closed-form, bayes, minimax-sum, minimax or "
                   "minimax-pairwise")
      ->required()
      ->check(CLI::IsMember({"optimal", "closed-form", "bayes", "minimax-sum",
                             "minimax", "minimax-pairwise"}));
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Cost, privacy and differential check of a mechanism");
  for (CLI::App* sub : {attack, evaluate}) {
    sub->add_option("--prior", common.prior, "prior JSON (file or inline)");
    auto* m = sub->add_option("--metrics", common.metrics, "metric tables JSON");
    auto* g = sub->add_option("--grid", common.grid,
                              "grid JSON; uses the location metrics");
    m->excludes(g);
    sub->add_option("--mechanism", common.mechanism, "mechanism JSON")
        ->required();
    sub->add_option("--out", common.out, "output file (default stdout)");
  }
  evaluate->get_option("--prior")->required();
  evaluate->add_option("--attack", common.attack, "also evaluate this attack");
  evaluate->add_option("--eps", common.eps, "verify differential privacy");
  evaluate->add_option("--deps", common.deps,
                       "thresholded differential check radius");

  // metrics, prior, trace
  GeoArgs geo;
  CLI::App* metrics_cmd =
      app.add_subcommand("metrics", "Write the location metrics of a grid");
  CLI::App* prior_cmd = app.add_subcommand(
      "prior", "Prior from a trace CSV or a synthetic trace");
  CLI::App* trace_cmd =
      app.add_subcommand("trace", "Write a synthetic trace as CSV");
  for (CLI::App* sub : {metrics_cmd, prior_cmd, trace_cmd}) {
    sub->add_option("--grid", geo.grid, "grid JSON (file or inline)")
        ->required();
    sub->add_option("--out", geo.out, "output file (default stdout)");
  }
  prior_cmd->add_option("--trace", geo.trace, "trace CSV file");
  prior_cmd->add_option("--smoothing", geo.smoothing, "additive smoothing");
  for (CLI::App* sub : {prior_cmd, trace_cmd}) {
    sub->add_option("--user", geo.user, "user id");
    sub->add_option("--seed", geo.seed, "synthetic trace seed (1)");
    sub->add_option("--length", geo.length, "synthetic trace length (500)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    if (mechanism->parsed()) {
      if (mech_args.metrics.empty() && mech_args.grid.empty()) {
        throw CLI::ValidationError("--metrics", "either --metrics or --grid is required");
      }
      RunMechanism(mech_kind, mech_args);
    } else if (experiment->parsed()) {
      RunExperiment(exp_name, exp_args);
    } else if (attack->parsed() || evaluate->parsed()) {
      if (common.metrics.empty() && common.grid.empty()) {
        throw CLI::ValidationError("--metrics", "either --metrics or --grid is required");
      }
      if (attack->parsed()) {
        RunAttack(attack_kind, common);
      } else {
        RunEvaluate(common);
      }
    } else if (metrics_cmd->parsed()) {
      RunMetrics(geo);
    } else if (prior_cmd->parsed()) {
      RunPrior(geo);
    } else if (trace_cmd->parsed()) {
      RunTrace(geo);
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  } catch (const Failure& failure) {
    std::fprintf(stderr, "privgame: %s\n", pg_last_error());
    return static_cast<int>(failure.status);
  }
  return 0;
}
