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

// C interface to the privgame library: optimal obfuscation mechanisms
// under distortion, differential and joint privacy constraints, the
// inference attacks that evaluate them, and the grid-world experiments.
//
// Conventions:
//  - Objects are opaque handles created by pg_*_create / pg_*_from_* /
//    builder functions and released with the matching pg_*_free, which
//    accept NULL.
//  - Fallible functions return a pg_status and write results through out
//    parameters, which are left untouched on failure. pg_last_error()
//    describes the most recent failure on the calling thread.
//  - Strings returned through `char**` are heap-allocated and released
//    with pg_string_free.
//  - Handles are immutable after creation and may be shared across
//    threads for reading.

#ifndef PRIVGAME_PRIVGAME_H_
#define PRIVGAME_PRIVGAME_H_

#include <stddef.h>
#include <stdint.h>

#if defined(PRIVGAME_BUILDING_LIBRARY)
#define PG_API __attribute__((visibility("default")))
#else
#define PG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pg_status {
  PG_OK = 0,
  PG_INVALID_ARGUMENT = 1,
  PG_DIMENSION_MISMATCH = 2,
  PG_UNKNOWN_LABEL = 3,
  // The constraints admit no mechanism (e.g. d_m above d_m^max).
  PG_INFEASIBLE = 4,
  // Pruning left some secret without observables, or removed every
  // feasible mechanism.
  PG_INFEASIBLE_AFTER_PRUNING = 5,
  PG_UNBOUNDED = 6,
  PG_SOLVER_FAILURE = 7,
  PG_NUMERICAL_FAILURE = 8,
  PG_EMPTY_TRACE = 9,
  PG_IO = 10,
  PG_PARSE = 11,
  // A built mechanism failed its own privacy re-check.
  PG_POST_CHECK_FAILED = 12,
  PG_INTERNAL = 13,
} pg_status;

typedef struct pg_prior pg_prior;
typedef struct pg_metrics pg_metrics;
typedef struct pg_mechanism pg_mechanism;
typedef struct pg_attack pg_attack;
typedef struct pg_grid pg_grid;
typedef struct pg_experiment pg_experiment;

// ---------------------------------------------------------------------
// Errors and strings.

// Message of the last failure on this thread; "" when none. Valid until
// the next failing call on the same thread.
PG_API const char* pg_last_error(void);
// Stable name of a status code, e.g. "Infeasible".
PG_API const char* pg_status_name(pg_status status);
PG_API const char* pg_version(void);
PG_API void pg_string_free(char* str);

// Reads or writes a whole text file.
PG_API pg_status pg_read_file(const char* path, char** out);
PG_API pg_status pg_write_file(const char* path, const char* text);

// ---------------------------------------------------------------------
// Priors: {"secrets":[...],"probs":[...]}.

PG_API pg_status pg_prior_from_json(const char* json, pg_prior** out);
// Secrets labelled "0", ..., "n-1".
PG_API pg_status pg_prior_create(const double* probs, size_t n,
                                 pg_prior** out);
PG_API pg_status pg_prior_uniform(size_t n, pg_prior** out);
PG_API size_t pg_prior_size(const pg_prior* prior);
PG_API double pg_prior_prob(const pg_prior* prior, size_t s);
PG_API double pg_prior_entropy(const pg_prior* prior);
PG_API pg_status pg_prior_to_json(const pg_prior* prior, char** out);
// Boosts the k likeliest secrets by beta and renormalizes.
PG_API pg_status pg_prior_sharpen(const pg_prior* prior, int k, double beta,
                                  pg_prior** out);
PG_API void pg_prior_free(pg_prior* prior);

// ---------------------------------------------------------------------
// Metric tables: {"secrets":[...],"observables":[...],"cost":[[...]],
// "privacy":[[...]],"disting":[[...]],"ground":[[...]]}; "observables"
// and "ground" are optional.

PG_API pg_status pg_metrics_from_json(const char* json, pg_metrics** out);
PG_API pg_status pg_metrics_to_json(const pg_metrics* metrics, char** out);
PG_API size_t pg_metrics_num_secrets(const pg_metrics* metrics);
PG_API size_t pg_metrics_num_observables(const pg_metrics* metrics);
PG_API void pg_metrics_free(pg_metrics* metrics);

// ---------------------------------------------------------------------
// Grids, location metrics and synthetic users.

PG_API pg_status pg_grid_create(int nx, int ny, double width_km,
                                double height_km, pg_grid** out);
// {"nx":..,"ny":..,"width_km":..,"height_km":..}
PG_API pg_status pg_grid_from_json(const char* json, pg_grid** out);
PG_API pg_status pg_grid_to_json(const pg_grid* grid, char** out);
PG_API size_t pg_grid_num_cells(const pg_grid* grid);
PG_API double pg_grid_diameter(const pg_grid* grid);
// Hamming cost; Euclidean privacy, distinguishability and ground distance.
PG_API pg_status pg_grid_location_metrics(const pg_grid* grid,
                                          pg_metrics** out);
// Maximum-likelihood prior of a seeded synthetic trace.
PG_API pg_status pg_grid_synthetic_prior(const pg_grid* grid, int length,
                                         uint64_t seed, double smoothing,
                                         pg_prior** out);
// Writes a synthetic trace as CSV (user_id,timestamp,cell_id).
PG_API pg_status pg_grid_synthetic_trace_csv(const pg_grid* grid, int length,
                                             uint64_t seed,
                                             const char* user_id, char** out);
// Prior of user `user_id` in a trace CSV.
PG_API pg_status pg_grid_prior_from_trace_csv(const pg_grid* grid,
                                              const char* csv,
                                              const char* user_id,
                                              double smoothing,
                                              pg_prior** out);
PG_API void pg_grid_free(pg_grid* grid);

// ---------------------------------------------------------------------
// Mechanisms: {"secrets":[...],"observables":[...],"rows":[[...]]}.

typedef enum pg_objective {
  PG_OBJECTIVE_AVERAGE = 0,
  PG_OBJECTIVE_WORST = 1,
} pg_objective;

typedef struct pg_build_options {
  pg_objective objective;
  // Drop differential constraints between secrets farther apart than
  // prune_eps (when has_prune_eps != 0).
  int has_prune_eps;
  double prune_eps;
  // Fix p(o|s) = 0 beyond ground distance prune_support (when
  // has_prune_support != 0).
  int has_prune_support;
  double prune_support;
  // Write the program in LP file format here before solving (NULL: off).
  const char* dump_lp_path;
} pg_build_options;

// Average objective, no pruning, no dump.
PG_API void pg_build_options_init(pg_build_options* options);

// `options` may be NULL for the defaults. The differential builders only
// support the average objective.
PG_API pg_status pg_mechanism_distortion(const pg_prior* prior,
                                         const pg_metrics* metrics, double dm,
                                         const pg_build_options* options,
                                         pg_mechanism** out);
PG_API pg_status pg_mechanism_differential(const pg_prior* prior,
                                           const pg_metrics* metrics,
                                           double eps,
                                           const pg_build_options* options,
                                           pg_mechanism** out);
PG_API pg_status pg_mechanism_differential_thresholded(
    const pg_prior* prior, const pg_metrics* metrics, double eps,
    double d_eps, const pg_build_options* options, pg_mechanism** out);
PG_API pg_status pg_mechanism_joint(const pg_prior* prior,
                                    const pg_metrics* metrics, double dm,
                                    double eps,
                                    const pg_build_options* options,
                                    pg_mechanism** out);
// The largest achievable distortion level d_m^max.
PG_API pg_status pg_max_distortion(const pg_prior* prior,
                                   const pg_metrics* metrics, double* out);

PG_API pg_status pg_mechanism_from_json(const char* json, pg_mechanism** out);
PG_API pg_status pg_mechanism_to_json(const pg_mechanism* mech, char** out);
PG_API pg_mechanism* pg_mechanism_identity(size_t n);
PG_API size_t pg_mechanism_num_secrets(const pg_mechanism* mech);
PG_API size_t pg_mechanism_num_observables(const pg_mechanism* mech);
PG_API double pg_mechanism_prob(const pg_mechanism* mech, size_t s, size_t o);
// Build statistics; zero / empty for mechanisms not built by this library.
// JSON object with objective, cost, privacy, repair_weight, lp_variables,
// lp_constraints, solve_seconds and the differential report when present.
PG_API pg_status pg_mechanism_summary_json(const pg_mechanism* mech,
                                           char** out);
PG_API double pg_mechanism_cost(const pg_mechanism* mech);
PG_API double pg_mechanism_privacy(const pg_mechanism* mech);
PG_API void pg_mechanism_free(pg_mechanism* mech);

// ---------------------------------------------------------------------
// Attacks: {"observables":[...],"secrets":[...],"rows":[[...]]}.

typedef enum pg_attack_kind {
  // Linear program minimizing the expected error.
  PG_ATTACK_OPTIMAL = 0,
  // Per-observable argmin; same error as PG_ATTACK_OPTIMAL.
  PG_ATTACK_OPTIMAL_CLOSED_FORM = 1,
  // Posterior under the prior.
  PG_ATTACK_BAYES = 2,
  // Prior-free attacks: minimize the sum, the maximum over secrets, or the
  // maximum over secret pairs of the conditional errors.
  PG_ATTACK_MINIMAX_SUM = 3,
  PG_ATTACK_MINIMAX = 4,
  PG_ATTACK_MINIMAX_PAIRWISE = 5,
} pg_attack_kind;

// `prior` is ignored (may be NULL) by the minimax kinds. `objective` may be
// NULL; it receives the program's optimal value (the expected error for
// the optimal and Bayes kinds).
PG_API pg_status pg_attack_build(pg_attack_kind kind, const pg_prior* prior,
                                 const pg_mechanism* mech,
                                 const pg_metrics* metrics, pg_attack** out,
                                 double* objective);
PG_API pg_status pg_attack_from_json(const char* json, pg_attack** out);
PG_API pg_status pg_attack_to_json(const pg_attack* attack, char** out);
PG_API double pg_attack_prob(const pg_attack* attack, size_t o, size_t s);
PG_API void pg_attack_free(pg_attack* attack);

// ---------------------------------------------------------------------
// Evaluation.

PG_API pg_status pg_expected_cost(const pg_prior* prior,
                                  const pg_mechanism* mech,
                                  const pg_metrics* metrics, double* out);
PG_API pg_status pg_worst_case_cost(const pg_mechanism* mech,
                                    const pg_metrics* metrics, double* out);
PG_API pg_status pg_expected_privacy(const pg_prior* prior,
                                     const pg_mechanism* mech,
                                     const pg_attack* attack,
                                     const pg_metrics* metrics, double* out);

// Checks the differential constraints at `eps` (distance-scaled, or the
// flat factor exp(eps) on pairs within d_eps when has_d_eps != 0).
// `passed` receives 1 or 0 and `margin` (may be NULL) the largest
// violation p(o|s) - bound * p(o|s').
PG_API pg_status pg_verify_differential(const pg_mechanism* mech,
                                        const pg_metrics* metrics, double eps,
                                        int has_d_eps, double d_eps,
                                        int* passed, double* margin);

// ---------------------------------------------------------------------
// Experiments (CSV output with '#'-prefixed metadata and column notes).

// Defaults: 8 x 6 grid over 6 x 4 km, 10 users, seed 1.
PG_API pg_status pg_experiment_create(pg_experiment** out);
// Copies the grid.
PG_API pg_status pg_experiment_set_grid(pg_experiment* exp,
                                        const pg_grid* grid);
PG_API pg_status pg_experiment_set_users(pg_experiment* exp, int users);
PG_API pg_status pg_experiment_set_seed(pg_experiment* exp, uint64_t seed);
PG_API pg_status pg_experiment_set_trace_length(pg_experiment* exp,
                                                int length);
PG_API pg_status pg_experiment_set_objective(pg_experiment* exp,
                                             pg_objective objective);
// `ladder` is one of "eps", "dm", "offsets", "betas", "radius"; `text` is
// "start:stop:step" or a single number.
PG_API pg_status pg_experiment_set_ladder(pg_experiment* exp,
                                          const char* ladder,
                                          const char* text);
PG_API pg_status pg_experiment_set_ladder_values(pg_experiment* exp,
                                                 const char* ladder,
                                                 const double* values,
                                                 size_t n);
PG_API pg_status pg_experiment_set_sharpen_k(pg_experiment* exp, int k);
// Distortion threshold of the approximation sweep (0: differential only).
PG_API pg_status pg_experiment_set_approx_dm(pg_experiment* exp, double dm);
PG_API pg_status pg_experiment_set_approx_support_radius(pg_experiment* exp,
                                                         double radius);
// `name` is scenario1, scenario2, scenario3, prior or approx.
PG_API pg_status pg_experiment_run(const pg_experiment* exp, const char* name,
                                   char** csv_out);
PG_API void pg_experiment_free(pg_experiment* exp);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // PRIVGAME_PRIVGAME_H_
