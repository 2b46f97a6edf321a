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

#ifndef PRIVGAME_LP_LINEAR_PROGRAM_H_
#define PRIVGAME_LP_LINEAR_PROGRAM_H_

#include <limits>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/types/span.h"

namespace privgame::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Term {
  int var;
  double coef;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation;
  double rhs;
};

// A linear program with sparse constraint rows and per-variable bounds.
//
// Variables default to [0, +inf). Once built, an instance is only read by
// the solvers, so a single LinearProgram may be solved from several threads.
class LinearProgram {
 public:
  LinearProgram() = default;
  explicit LinearProgram(int num_vars);

  // Appends a variable and returns its index.
  int AddVariable(double lower = 0.0, double upper = kInfinity,
                  std::string name = "");
  // Appends `count` variables and returns the index of the first one.
  int AddVariables(int count, double lower = 0.0, double upper = kInfinity);

  void SetBounds(int var, double lower, double upper);
  void SetName(int var, std::string name);
  void SetSense(Sense sense) { sense_ = sense; }
  void SetObjectiveCoefficient(int var, double coef);

  // Terms with a zero coefficient are dropped; repeated variables are kept
  // as-is and summed by the solvers.
  void AddConstraint(std::vector<Term> terms, Relation relation, double rhs);

  int num_vars() const { return static_cast<int>(lower_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  Sense sense() const { return sense_; }
  absl::Span<const double> objective() const { return objective_; }
  absl::Span<const Constraint> constraints() const { return constraints_; }
  double lower(int var) const { return lower_[var]; }
  double upper(int var) const { return upper_[var]; }
  std::string VariableName(int var) const;
  size_t NumNonzeros() const;

  // Checks index ranges, finiteness of coefficients and right-hand sides,
  // and lower <= upper on every variable.
  absl::Status Validate() const;

  // Objective value of `values` (no feasibility check).
  double Evaluate(absl::Span<const double> values) const;

  // Largest violation over all rows and bounds. Row violations are divided
  // by max(1, largest |coefficient| in the row), so rows with very large
  // multipliers (e.g. exp(eps * d) factors) are judged on the same scale as
  // unit rows. Bound violations are absolute.
  double MaxViolation(absl::Span<const double> values) const;

 private:
  Sense sense_ = Sense::kMinimize;
  std::vector<double> objective_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::string> names_;
  std::vector<Constraint> constraints_;
};

}  // namespace privgame::lp

#endif  // PRIVGAME_LP_LINEAR_PROGRAM_H_
