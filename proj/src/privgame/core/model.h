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

#ifndef PRIVGAME_CORE_MODEL_H_
#define PRIVGAME_CORE_MODEL_H_

#include <optional>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "privgame/core/label_space.h"

namespace privgame {

// Dense row-major table of doubles.
using Table = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                            Eigen::RowMajor>;

// Row sums of mechanisms and attacks must equal 1 within this tolerance.
inline constexpr double kRowSumTolerance = 1e-7;
// Prior probabilities must sum to 1 within this tolerance.
inline constexpr double kPriorSumTolerance = 1e-9;

// Probability distribution pi over the secrets.
class Prior {
 public:
  static absl::StatusOr<Prior> Create(LabelSpace secrets,
                                      std::vector<double> probs);
  // Uniform distribution over `secrets`.
  static Prior Uniform(LabelSpace secrets);

  const LabelSpace& secrets() const { return secrets_; }
  const std::vector<double>& probs() const { return probs_; }
  double operator[](int s) const { return probs_[s]; }
  int size() const { return static_cast<int>(probs_.size()); }

  // Shannon entropy in nats.
  double Entropy() const;

 private:
  Prior(LabelSpace secrets, std::vector<double> probs)
      : secrets_(std::move(secrets)), probs_(std::move(probs)) {}

  LabelSpace secrets_;
  std::vector<double> probs_;
};

// A row-stochastic matrix between two label spaces. Mechanisms map secrets
// to observables (rows[s][o] = p(o|s)); attacks map observables back to
// secrets (rows[o][s_hat] = q(s_hat|o)).
class StochasticMatrix {
 public:
  const LabelSpace& row_space() const { return rows_space_; }
  const LabelSpace& col_space() const { return cols_space_; }
  const Table& rows() const { return rows_; }
  double operator()(int r, int c) const { return rows_(r, c); }
  int num_rows() const { return static_cast<int>(rows_.rows()); }
  int num_cols() const { return static_cast<int>(rows_.cols()); }

  // Largest |row sum - 1| and most negative entry (as a non-negative
  // number); both are zero for an exact stochastic matrix.
  double MaxRowSumError() const;
  double MaxNegativity() const;

 protected:
  StochasticMatrix(LabelSpace rows_space, LabelSpace cols_space, Table rows)
      : rows_space_(std::move(rows_space)),
        cols_space_(std::move(cols_space)),
        rows_(std::move(rows)) {}

  // Checks shape, finiteness, non-negativity and row sums.
  static absl::Status Validate(const LabelSpace& rows_space,
                               const LabelSpace& cols_space, const Table& rows,
                               double tolerance, std::string_view what);
  // Clamps negatives to zero and rescales each row to sum to one. Rows that
  // are entirely non-positive become uniform.
  static Table Normalize(Table rows);

 private:
  LabelSpace rows_space_;
  LabelSpace cols_space_;
  Table rows_;
};

class Mechanism : public StochasticMatrix {
 public:
  // Fails if entries are negative or a row sum deviates from 1 by more than
  // `tolerance`.
  static absl::StatusOr<Mechanism> Create(LabelSpace secrets,
                                          LabelSpace observables, Table rows,
                                          double tolerance = kRowSumTolerance);
  // Projects `rows` onto the stochastic matrices by clamping and row
  // rescaling. Used to clean solver output.
  static absl::StatusOr<Mechanism> CreateNormalized(LabelSpace secrets,
                                                    LabelSpace observables,
                                                    Table rows);
  static Mechanism Identity(LabelSpace secrets);
  static Mechanism Uniform(LabelSpace secrets, LabelSpace observables);

  const LabelSpace& secrets() const { return row_space(); }
  const LabelSpace& observables() const { return col_space(); }

 private:
  using StochasticMatrix::StochasticMatrix;
};

class Attack : public StochasticMatrix {
 public:
  static absl::StatusOr<Attack> Create(LabelSpace observables,
                                       LabelSpace secrets, Table rows,
                                       double tolerance = kRowSumTolerance);
  static absl::StatusOr<Attack> CreateNormalized(LabelSpace observables,
                                                 LabelSpace secrets,
                                                 Table rows);
  static Attack Uniform(LabelSpace observables, LabelSpace secrets);

  const LabelSpace& observables() const { return row_space(); }
  const LabelSpace& secrets() const { return col_space(); }

 private:
  using StochasticMatrix::StochasticMatrix;
};

// Distance tables used by the privacy and utility metrics.
//   cost(o, s)        utility cost of releasing o when the secret is s;
//   privacy(s_hat, s) error of guessing s_hat when the secret is s;
//   disting(s, s')    distinguishability scaling the differential bound;
//   ground(o, s)      distance used to prune the mechanism support.
// All tables are |rows| x |cols| in the order of the arguments above.
class MetricSet {
 public:
  // When `ground` is absent and the observables carry the same labels as
  // the secrets, ground(o, s) defaults to privacy(o, s).
  static absl::StatusOr<MetricSet> Create(LabelSpace secrets,
                                          LabelSpace observables, Table cost,
                                          Table privacy, Table disting,
                                          std::optional<Table> ground = {});

  const LabelSpace& secrets() const { return secrets_; }
  const LabelSpace& observables() const { return observables_; }
  const Table& cost() const { return cost_; }
  const Table& privacy() const { return privacy_; }
  const Table& disting() const { return disting_; }
  // Empty when no ground distance is available.
  const std::optional<Table>& ground() const { return ground_; }

  int num_secrets() const { return secrets_.size(); }
  int num_observables() const { return observables_.size(); }

 private:
  MetricSet(LabelSpace secrets, LabelSpace observables, Table cost,
            Table privacy, Table disting, std::optional<Table> ground)
      : secrets_(std::move(secrets)),
        observables_(std::move(observables)),
        cost_(std::move(cost)),
        privacy_(std::move(privacy)),
        disting_(std::move(disting)),
        ground_(std::move(ground)) {}

  LabelSpace secrets_;
  LabelSpace observables_;
  Table cost_;
  Table privacy_;
  Table disting_;
  std::optional<Table> ground_;
};

// User-chosen privacy levels.
struct PrivacyBounds {
  // Minimum expected inference error (unit of the privacy distance).
  double d_m = 0.0;
  // Differential budget.
  double eps_m = 0.0;
  // Optional distinguishability threshold for the thresholded variant.
  std::optional<double> d_eps_m;

  absl::Status Validate() const;
};

// Dimension checks shared by the metric functions.
absl::Status CheckCompatible(const Prior& prior, const Mechanism& mech);
absl::Status CheckCompatible(const Mechanism& mech, const MetricSet& metrics);
absl::Status CheckCompatible(const Mechanism& mech, const Attack& attack);

}  // namespace privgame

#endif  // PRIVGAME_CORE_MODEL_H_
