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

// Two-phase dense tableau simplex with Bland's rule.
//
// The program is first rewritten over nonnegative columns: finite lower
// bounds are shifted out, finite upper bounds become rows, free variables
// are split. Every row is scaled to unit max-norm and flipped to a
// nonnegative right-hand side; <= rows start with their slack in the basis,
// >= and = rows with an artificial column that phase 1 drives to zero.
//
// Pivoting uses Bland's entering rule with a Harris ratio test that prefers
// the largest pivot among near-ties; strict Bland leaving is restored when
// the objective stalls, which keeps the anti-cycling guarantee. The final
// basic solution is recomputed from the original rows with a fresh LU
// factorization, which removes the drift accumulated in the tableau.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "Eigen/Dense"
#include "absl/strings/str_cat.h"
#include "privgame/common/errors.h"
#include "privgame/lp/solver.h"

namespace privgame::lp {
namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kZeroTolerance = 1e-13;
// Slack of the Harris ratio test, in units of the (unit max-norm) rows.
constexpr double kHarrisTolerance = 1e-10;

struct ColumnMap {
  double offset = 0.0;
  double sign = 1.0;
  int pos = -1;
  int neg = -1;
};

struct StdRow {
  std::vector<std::pair<int, double>> terms;
  Relation relation;
  double rhs;
};

struct StandardForm {
  int num_columns = 0;
  std::vector<ColumnMap> columns;
  std::vector<double> cost;
  std::vector<StdRow> rows;
  bool trivially_infeasible = false;
};

StandardForm ToStandardForm(const LinearProgram& lp, double feas_tol) {
  StandardForm sf;
  const int n = lp.num_vars();
  sf.columns.resize(n);
  std::vector<StdRow> bound_rows;
  for (int j = 0; j < n; ++j) {
    ColumnMap& cm = sf.columns[j];
    const double lo = lp.lower(j);
    const double hi = lp.upper(j);
    if (std::isfinite(lo)) {
      cm = {lo, 1.0, sf.num_columns++, -1};
      if (std::isfinite(hi)) {
        bound_rows.push_back({{{cm.pos, 1.0}}, Relation::kLessEqual, hi - lo});
      }
    } else if (std::isfinite(hi)) {
      cm = {hi, -1.0, sf.num_columns++, -1};
    } else {
      cm.pos = sf.num_columns++;
      cm.neg = sf.num_columns++;
    }
  }
  sf.cost.assign(sf.num_columns, 0.0);
  const double sense = lp.sense() == Sense::kMaximize ? -1.0 : 1.0;
  for (int j = 0; j < n; ++j) {
    const double c = sense * lp.objective()[j];
    const ColumnMap& cm = sf.columns[j];
    sf.cost[cm.pos] += cm.sign * c;
    if (cm.neg >= 0) sf.cost[cm.neg] -= c;
  }

  std::vector<double> dense(sf.num_columns, 0.0);
  std::vector<char> seen(sf.num_columns, 0);
  std::vector<int> touched;
  for (const Constraint& c : lp.constraints()) {
    double rhs = c.rhs;
    touched.clear();
    for (const Term& t : c.terms) {
      const ColumnMap& cm = sf.columns[t.var];
      rhs -= t.coef * cm.offset;
      auto add = [&](int col, double v) {
        if (!seen[col]) {
          seen[col] = 1;
          touched.push_back(col);
        }
        dense[col] += v;
      };
      add(cm.pos, cm.sign * t.coef);
      if (cm.neg >= 0) add(cm.neg, -t.coef);
    }
    std::sort(touched.begin(), touched.end());
    StdRow row{{}, c.relation, rhs};
    double scale = 0.0;
    for (int col : touched) {
      if (dense[col] != 0.0) {
        row.terms.push_back({col, dense[col]});
        scale = std::max(scale, std::abs(dense[col]));
      }
      dense[col] = 0.0;
      seen[col] = 0;
    }
    if (row.terms.empty()) {
      const bool ok = (c.relation == Relation::kLessEqual && rhs >= -feas_tol) ||
                      (c.relation == Relation::kGreaterEqual && rhs <= feas_tol) ||
                      (c.relation == Relation::kEqual && std::abs(rhs) <= feas_tol);
      if (!ok) sf.trivially_infeasible = true;
      continue;
    }
    for (auto& [col, v] : row.terms) v /= scale;
    row.rhs /= scale;
    sf.rows.push_back(std::move(row));
  }
  for (StdRow& r : bound_rows) sf.rows.push_back(std::move(r));
  return sf;
}

class Tableau {
 public:
  Tableau(int rows, int cols)
      : m_(rows), n_(cols), a_(static_cast<size_t>(rows) * (cols + 1), 0.0),
        cost_(cols + 1, 0.0), basis_(rows, -1), origin_(rows) {
    for (int i = 0; i < rows; ++i) origin_[i] = i;
  }

  double& at(int i, int j) { return a_[static_cast<size_t>(i) * (n_ + 1) + j]; }
  double at(int i, int j) const {
    return a_[static_cast<size_t>(i) * (n_ + 1) + j];
  }
  double& rhs(int i) { return at(i, n_); }
  double& cost(int j) { return cost_[j]; }
  int& basis(int i) { return basis_[i]; }
  // Index of row i in the initial tableau.
  int origin(int i) const { return origin_[i]; }
  int rows() const { return m_; }
  int cols() const { return n_; }

  void Pivot(int r, int c) {
    double* pr = &a_[static_cast<size_t>(r) * (n_ + 1)];
    const double inv = 1.0 / pr[c];
    nz_.clear();
    for (int j = 0; j <= n_; ++j) {
      if (pr[j] != 0.0) {
        pr[j] *= inv;
        nz_.push_back(j);
      }
    }
    pr[c] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* pi = &a_[static_cast<size_t>(i) * (n_ + 1)];
      const double f = pi[c];
      if (f == 0.0) continue;
      for (int j : nz_) pi[j] -= f * pr[j];
      pi[c] = 0.0;
      if (std::abs(pi[n_]) < kZeroTolerance) pi[n_] = 0.0;
    }
    const double f = cost_[c];
    if (f != 0.0) {
      for (int j : nz_) cost_[j] -= f * pr[j];
      cost_[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Removes row r (used for redundant equality rows after phase 1).
  void EraseRow(int r) {
    const size_t width = n_ + 1;
    a_.erase(a_.begin() + r * width, a_.begin() + (r + 1) * width);
    basis_.erase(basis_.begin() + r);
    origin_.erase(origin_.begin() + r);
    --m_;
  }

 private:
  int m_;
  int n_;
  std::vector<double> a_;
  std::vector<double> cost_;
  std::vector<int> basis_;
  std::vector<int> origin_;
  std::vector<int> nz_;
};

enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit };

// Chooses the leaving row for column `enter`, or -1 when the column is
// unbounded. `strict` selects Bland's lowest-basis-index rule among ties.
int LeavingRow(Tableau& t, int enter, bool strict) {
  int leave = -1;
  if (!strict) {
    // Harris: bound the step with slightly relaxed right-hand sides, then
    // take the largest pivot whose exact ratio stays within that bound.
    double bound = std::numeric_limits<double>::infinity();
    for (int i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= kPivotTolerance) continue;
      bound = std::min(bound, (std::max(0.0, t.rhs(i)) + kHarrisTolerance) / a);
    }
    double best_pivot = 0.0;
    for (int i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= kPivotTolerance) continue;
      if (std::max(0.0, t.rhs(i)) / a <= bound && a > best_pivot) {
        best_pivot = a;
        leave = i;
      }
    }
    return leave;
  }
  double best = 0.0;
  for (int i = 0; i < t.rows(); ++i) {
    const double a = t.at(i, enter);
    if (a <= kPivotTolerance) continue;
    const double ratio = std::max(0.0, t.rhs(i)) / a;
    const double slack = 1e-12 * (1.0 + best);
    if (leave < 0 || ratio < best - slack) {
      best = ratio;
      leave = i;
    } else if (ratio <= best + slack && t.basis(i) < t.basis(leave)) {
      best = std::min(best, ratio);
      leave = i;
    }
  }
  return leave;
}

// Runs pivots on columns [0, allowed_cols) until no reduced cost is below
// -opt_tol.
PhaseResult RunPhase(Tableau& t, int allowed_cols, double opt_tol,
                     int max_iterations, int& iterations) {
  // Consecutive pivots without objective progress before switching to
  // strict Bland leaving.
  const int stall_limit = 50 + t.rows();
  int stalled = 0;
  while (true) {
    int enter = -1;
    for (int j = 0; j < allowed_cols; ++j) {
      if (t.cost(j) < -opt_tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return PhaseResult::kOptimal;
    const int leave = LeavingRow(t, enter, stalled > stall_limit);
    if (leave < 0) return PhaseResult::kUnbounded;
    const double objective = t.cost(t.cols());
    t.Pivot(leave, enter);
    // The objective -cost(n) decreases, so cost(n) rises on progress.
    if (t.cost(t.cols()) > objective + 1e-12 * (1.0 + std::abs(objective))) {
      stalled = 0;
    } else {
      ++stalled;
    }
    if (++iterations > max_iterations) return PhaseResult::kIterationLimit;
  }
}

// Refreshes the tableau for the current basis from the rows of the initial
// tableau with a fresh LU factorization: the right-hand side always, the
// reduced costs from `phase_cost` always, and the body only when `full`.
// Returns false when the basis matrix is numerically singular.
bool Reinvert(const Tableau& initial, const std::vector<double>& phase_cost,
              bool full, Tableau& t) {
  const int m = t.rows();
  const int n = t.cols();
  if (m == 0) {
    for (int j = 0; j <= n; ++j) t.cost(j) = j < n ? phase_cost[j] : 0.0;
    return true;
  }
  Eigen::MatrixXd basis(m, m);
  Eigen::MatrixXd rows(m, n + 1);
  Eigen::VectorXd basic_cost(m);
  for (int i = 0; i < m; ++i) {
    const int origin = t.origin(i);
    for (int k = 0; k < m; ++k) basis(i, k) = initial.at(origin, t.basis(k));
    for (int j = 0; j <= n; ++j) rows(i, j) = initial.at(origin, j);
    basic_cost[i] = phase_cost[t.basis(i)];
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
  const Eigen::VectorXd x = lu.solve(rows.col(n));
  // Simplex multipliers y with B' y = c_B.
  const Eigen::VectorXd y = lu.transpose().solve(basic_cost);
  if (!x.allFinite() || !y.allFinite()) return false;
  const double scale = 1.0 + rows.col(n).lpNorm<Eigen::Infinity>();
  if ((basis * x - rows.col(n)).lpNorm<Eigen::Infinity>() > 1e-9 * scale) {
    return false;
  }
  if (full) {
    const Eigen::MatrixXd fresh = lu.solve(rows.leftCols(n));
    if (!fresh.allFinite()) return false;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        const double v = fresh(i, j);
        t.at(i, j) = std::abs(v) < kZeroTolerance ? 0.0 : v;
      }
    }
    for (int k = 0; k < m; ++k) {
      for (int i = 0; i < m; ++i) t.at(i, t.basis(k)) = i == k ? 1.0 : 0.0;
    }
  }
  for (int i = 0; i < m; ++i) t.rhs(i) = x[i];
  const Eigen::VectorXd reduced = y.transpose() * rows;
  for (int j = 0; j < n; ++j) t.cost(j) = phase_cost[j] - reduced[j];
  t.cost(n) = -reduced[n];
  for (int i = 0; i < m; ++i) t.cost(t.basis(i)) = 0.0;
  return true;
}

}  // namespace

size_t SimplexTableauEntries(const LinearProgram& lp) {
  size_t cols = 0;
  size_t rows = lp.num_constraints();
  for (int j = 0; j < lp.num_vars(); ++j) {
    const bool lo = std::isfinite(lp.lower(j));
    const bool hi = std::isfinite(lp.upper(j));
    cols += (lo || hi) ? 1 : 2;
    if (lo && hi) ++rows;
  }
  // One slack or artificial per row, plus surpluses for >= rows.
  size_t extra = rows;
  for (const Constraint& c : lp.constraints()) {
    if (c.relation == Relation::kGreaterEqual) ++extra;
  }
  return rows * (cols + extra + 1);
}

absl::StatusOr<LpSolution> SolveSimplex(const LinearProgram& lp,
                                        const SolverOptions& options) {
  const double feas_tol = options.feasibility_tolerance;
  StandardForm sf = ToStandardForm(lp, feas_tol);
  LpSolution solution;
  solution.algorithm_used = Algorithm::kSimplex;
  if (sf.trivially_infeasible) {
    solution.status = SolveStatus::kInfeasible;
    return solution;
  }

  // Flip rows to nonnegative right-hand sides and lay out columns.
  const int m = static_cast<int>(sf.rows.size());
  const int ns = sf.num_columns;
  int num_slack = 0;
  int num_art = 0;
  for (StdRow& r : sf.rows) {
    if (r.rhs < 0) {
      r.rhs = -r.rhs;
      for (auto& [col, v] : r.terms) v = -v;
      if (r.relation == Relation::kLessEqual) {
        r.relation = Relation::kGreaterEqual;
      } else if (r.relation == Relation::kGreaterEqual) {
        r.relation = Relation::kLessEqual;
      }
    }
    if (r.relation != Relation::kEqual) ++num_slack;
    if (r.relation != Relation::kLessEqual) ++num_art;
  }
  const int first_art = ns + num_slack;
  const int total = first_art + num_art;

  Tableau t(m, total);
  Tableau initial(0, 0);
  {
    int slack = ns;
    int art = first_art;
    for (int i = 0; i < m; ++i) {
      const StdRow& r = sf.rows[i];
      for (const auto& [col, v] : r.terms) t.at(i, col) = v;
      t.rhs(i) = r.rhs;
      switch (r.relation) {
        case Relation::kLessEqual:
          t.at(i, slack) = 1.0;
          t.basis(i) = slack++;
          break;
        case Relation::kGreaterEqual:
          t.at(i, slack++) = -1.0;
          t.at(i, art) = 1.0;
          t.basis(i) = art++;
          break;
        case Relation::kEqual:
          t.at(i, art) = 1.0;
          t.basis(i) = art++;
          break;
      }
    }
  }

  initial = t;

  double cost_scale = 1.0;
  for (double c : sf.cost) cost_scale = std::max(cost_scale, std::abs(c));
  const double opt_tol = 1e-11 * cost_scale;
  const int max_iterations = options.max_iterations > 0
                                 ? options.max_iterations
                                 : std::max(20000, 50 * (m + total));
  int iterations = 0;

  // Runs a phase to optimality, then rebuilds the tableau from the initial
  // rows and resumes if the fresh reduced costs show it stopped early.
  auto run_phase = [&](const std::vector<double>& phase_cost, double tolerance,
                       bool last_phase) -> absl::StatusOr<PhaseResult> {
    for (int round = 0;; ++round) {
      const PhaseResult r =
          RunPhase(t, first_art, tolerance, max_iterations, iterations);
      if (r == PhaseResult::kIterationLimit) {
        return NumericalFailureError(absl::StrCat(
            "simplex hit the iteration limit (", max_iterations, ")"));
      }
      if (r == PhaseResult::kUnbounded) return r;
      // Phase 1 hands its tableau on to phase 2, so rebuild it in full.
      if (!Reinvert(initial, phase_cost, /*full=*/!last_phase, t)) {
        return NumericalFailureError("simplex basis became singular");
      }
      bool improvable = false;
      for (int j = 0; j < first_art && !improvable; ++j) {
        improvable = t.cost(j) < -tolerance;
      }
      if (!improvable || round == 3) return r;
      if (last_phase && !Reinvert(initial, phase_cost, /*full=*/true, t)) {
        return NumericalFailureError("simplex basis became singular");
      }
    }
  };

  // Phase 1: minimize the sum of artificials.
  if (num_art > 0) {
    std::vector<double> phase_cost(total, 0.0);
    for (int j = first_art; j < total; ++j) phase_cost[j] = 1.0;
    for (int i = 0; i < m; ++i) {
      if (t.basis(i) < first_art) continue;
      for (int j = 0; j <= total; ++j) {
        if (j < first_art || j == total) t.cost(j) -= t.at(i, j);
      }
    }
    // Phase 1 is bounded below by zero, so kUnbounded cannot occur.
    PRIVGAME_RETURN_IF_ERROR(run_phase(phase_cost, 1e-11, /*last_phase=*/false).status());
    const double infeasibility = -t.cost(total);
    if (infeasibility > 1e-2 * feas_tol) {
      solution.status = SolveStatus::kInfeasible;
      solution.iterations = iterations;
      return solution;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    for (int i = t.rows() - 1; i >= 0; --i) {
      if (t.basis(i) < first_art) continue;
      int col = -1;
      double best = kPivotTolerance;
      for (int j = 0; j < first_art; ++j) {
        if (std::abs(t.at(i, j)) > best) {
          best = std::abs(t.at(i, j));
          col = j;
        }
      }
      t.rhs(i) = 0.0;
      if (col >= 0) {
        t.Pivot(i, col);
      } else {
        t.EraseRow(i);  // redundant row
      }
    }
  }

  // Phase 2 on the original costs, artificials barred from entering.
  std::vector<double> phase_cost(total, 0.0);
  std::copy(sf.cost.begin(), sf.cost.end(), phase_cost.begin());
  for (int j = 0; j <= total; ++j) t.cost(j) = j < ns ? sf.cost[j] : 0.0;
  for (int i = 0; i < t.rows(); ++i) {
    const int b = t.basis(i);
    const double cb = b < ns ? sf.cost[b] : 0.0;
    if (cb == 0.0) continue;
    for (int j = 0; j <= total; ++j) t.cost(j) -= cb * t.at(i, j);
  }
  PRIVGAME_ASSIGN_OR_RETURN(const PhaseResult r,
                            run_phase(phase_cost, opt_tol, /*last_phase=*/true));
  solution.iterations = iterations;
  if (r == PhaseResult::kUnbounded) {
    solution.status = SolveStatus::kUnbounded;
    return solution;
  }

  std::vector<double> std_values(total, 0.0);
  for (int i = 0; i < t.rows(); ++i) {
    // Rounding in the tableau can leave a basis that is slightly primal
    // infeasible; a clearly negative value means the pivots went astray.
    if (t.rhs(i) < -feas_tol) {
      return NumericalFailureError(absl::StrCat(
          "simplex basis is primal infeasible by ", -t.rhs(i)));
    }
    std_values[t.basis(i)] = std::max(0.0, t.rhs(i));
  }
  solution.values.resize(lp.num_vars());
  for (int j = 0; j < lp.num_vars(); ++j) {
    const ColumnMap& cm = sf.columns[j];
    double v = cm.offset + cm.sign * std_values[cm.pos];
    if (cm.neg >= 0) v -= std_values[cm.neg];
    solution.values[j] = v;
  }
  solution.status = SolveStatus::kOptimal;
  solution.objective_value = lp.Evaluate(solution.values);
  return solution;
}

}  // namespace privgame::lp
