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

#include "privgame/lp/linear_program.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "privgame/common/errors.h"

namespace privgame::lp {

LinearProgram::LinearProgram(int num_vars) { AddVariables(num_vars); }

int LinearProgram::AddVariable(double lower, double upper, std::string name) {
  lower_.push_back(lower);
  upper_.push_back(upper);
  objective_.push_back(0.0);
  names_.push_back(std::move(name));
  return num_vars() - 1;
}

int LinearProgram::AddVariables(int count, double lower, double upper) {
  const int first = num_vars();
  lower_.resize(first + count, lower);
  upper_.resize(first + count, upper);
  objective_.resize(first + count, 0.0);
  names_.resize(first + count);
  return first;
}

void LinearProgram::SetBounds(int var, double lower, double upper) {
  lower_[var] = lower;
  upper_[var] = upper;
}

void LinearProgram::SetName(int var, std::string name) {
  names_[var] = std::move(name);
}

void LinearProgram::SetObjectiveCoefficient(int var, double coef) {
  objective_[var] = coef;
}

void LinearProgram::AddConstraint(std::vector<Term> terms, Relation relation,
                                  double rhs) {
  std::erase_if(terms, [](const Term& t) { return t.coef == 0.0; });
  constraints_.push_back(Constraint{std::move(terms), relation, rhs});
}

std::string LinearProgram::VariableName(int var) const {
  if (!names_[var].empty()) return names_[var];
  return absl::StrCat("x", var);
}

size_t LinearProgram::NumNonzeros() const {
  size_t nnz = 0;
  for (const Constraint& c : constraints_) nnz += c.terms.size();
  return nnz;
}

absl::Status LinearProgram::Validate() const {
  for (int j = 0; j < num_vars(); ++j) {
    if (!std::isfinite(objective_[j])) {
      return InvalidArgumentError(
          absl::StrCat("objective coefficient of ", VariableName(j),
                       " is not finite"));
    }
    if (std::isnan(lower_[j]) || std::isnan(upper_[j]) ||
        lower_[j] > upper_[j] || lower_[j] == kInfinity ||
        upper_[j] == -kInfinity) {
      return InvalidArgumentError(
          absl::StrCat("invalid bounds on ", VariableName(j)));
    }
  }
  for (int i = 0; i < num_constraints(); ++i) {
    const Constraint& c = constraints_[i];
    if (!std::isfinite(c.rhs)) {
      return InvalidArgumentError(
          absl::StrCat("constraint ", i, " has a non-finite right-hand side"));
    }
    for (const Term& t : c.terms) {
      if (t.var < 0 || t.var >= num_vars()) {
        return InvalidArgumentError(absl::StrCat(
            "constraint ", i, " references variable ", t.var,
            " but the program has ", num_vars(), " variables"));
      }
      if (!std::isfinite(t.coef)) {
        return InvalidArgumentError(
            absl::StrCat("constraint ", i, " has a non-finite coefficient"));
      }
    }
  }
  return absl::OkStatus();
}

double LinearProgram::Evaluate(absl::Span<const double> values) const {
  double total = 0.0;
  for (int j = 0; j < num_vars(); ++j) total += objective_[j] * values[j];
  return total;
}

double LinearProgram::MaxViolation(absl::Span<const double> values) const {
  double worst = 0.0;
  for (int j = 0; j < num_vars(); ++j) {
    worst = std::max(worst, lower_[j] - values[j]);
    worst = std::max(worst, values[j] - upper_[j]);
  }
  for (const Constraint& c : constraints_) {
    double activity = 0.0;
    double scale = 1.0;
    for (const Term& t : c.terms) {
      activity += t.coef * values[t.var];
      scale = std::max(scale, std::abs(t.coef));
    }
    double violation = 0.0;
    switch (c.relation) {
      case Relation::kLessEqual:
        violation = activity - c.rhs;
        break;
      case Relation::kGreaterEqual:
        violation = c.rhs - activity;
        break;
      case Relation::kEqual:
        violation = std::abs(activity - c.rhs);
        break;
    }
    worst = std::max(worst, violation / scale);
  }
  return worst;
}

}  // namespace privgame::lp
