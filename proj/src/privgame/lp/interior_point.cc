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

// Primal-dual interior point method on the homogeneous self-dual embedding of
//
//   minimize c'x  s.t.  G x + s = h,  A x = b,  s >= 0,
//
// with Mehrotra predictor-corrector steps. Each Newton system is reduced to
//
//   [ G' W^-1 G   A' ] [dx]
//   [ A           0  ] [dy]
//
// and factored with a sparse LDL' (AMD ordering) after a small quasi-definite
// regularization, followed by iterative refinement against the exact matrix.
// The embedding certifies infeasibility and unboundedness through tau -> 0.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "absl/strings/str_cat.h"
#include "privgame/common/errors.h"
#include "privgame/lp/solver.h"

namespace privgame::lp {
namespace {

using SpMat = Eigen::SparseMatrix<double>;
using SpMatR = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;
using Triplet = Eigen::Triplet<double>;

constexpr double kRegularization = 1e-13;
constexpr double kDualRegularization = 1e-10;
constexpr int kRefinementSteps = 2;
constexpr double kStepFraction = 0.99;

struct ConicForm {
  int n = 0;
  SpMatR G;
  Vec h;
  SpMatR A;
  Vec b;
  Vec c;
  bool trivially_infeasible = false;
};

ConicForm ToConicForm(const LinearProgram& lp, double feas_tol) {
  ConicForm f;
  f.n = lp.num_vars();
  std::vector<Triplet> g_trip;
  std::vector<Triplet> a_trip;
  std::vector<double> h;
  std::vector<double> b;

  std::vector<double> dense(f.n, 0.0);
  std::vector<char> seen(f.n, 0);
  std::vector<int> touched;
  for (const Constraint& con : lp.constraints()) {
    touched.clear();
    for (const Term& t : con.terms) {
      if (!seen[t.var]) {
        seen[t.var] = 1;
        touched.push_back(t.var);
      }
      dense[t.var] += t.coef;
    }
    double scale = 0.0;
    for (int j : touched) scale = std::max(scale, std::abs(dense[j]));
    if (scale == 0.0) {
      const double r = con.rhs;
      const bool ok = (con.relation == Relation::kLessEqual && r >= -feas_tol) ||
                      (con.relation == Relation::kGreaterEqual && r <= feas_tol) ||
                      (con.relation == Relation::kEqual && std::abs(r) <= feas_tol);
      if (!ok) f.trivially_infeasible = true;
    } else {
      const double sign = con.relation == Relation::kGreaterEqual ? -1.0 : 1.0;
      const double mult = sign / scale;
      if (con.relation == Relation::kEqual) {
        const int row = static_cast<int>(b.size());
        for (int j : touched) {
          if (dense[j] != 0.0) a_trip.emplace_back(row, j, dense[j] * mult);
        }
        b.push_back(con.rhs * mult);
      } else {
        const int row = static_cast<int>(h.size());
        for (int j : touched) {
          if (dense[j] != 0.0) g_trip.emplace_back(row, j, dense[j] * mult);
        }
        h.push_back(con.rhs * mult);
      }
    }
    for (int j : touched) {
      dense[j] = 0.0;
      seen[j] = 0;
    }
  }
  for (int j = 0; j < f.n; ++j) {
    const double lo = lp.lower(j);
    const double hi = lp.upper(j);
    if (lo == hi) {
      a_trip.emplace_back(static_cast<int>(b.size()), j, 1.0);
      b.push_back(lo);
      continue;
    }
    if (std::isfinite(lo)) {
      g_trip.emplace_back(static_cast<int>(h.size()), j, -1.0);
      h.push_back(-lo);
    }
    if (std::isfinite(hi)) {
      g_trip.emplace_back(static_cast<int>(h.size()), j, 1.0);
      h.push_back(hi);
    }
  }
  f.G.resize(static_cast<int>(h.size()), f.n);
  f.G.setFromTriplets(g_trip.begin(), g_trip.end());
  f.A.resize(static_cast<int>(b.size()), f.n);
  f.A.setFromTriplets(a_trip.begin(), a_trip.end());
  f.h = Eigen::Map<Vec>(h.data(), static_cast<int>(h.size()));
  f.b = Eigen::Map<Vec>(b.data(), static_cast<int>(b.size()));

  f.c.resize(f.n);
  const double sense = lp.sense() == Sense::kMaximize ? -1.0 : 1.0;
  double c_scale = 1.0;
  for (int j = 0; j < f.n; ++j) {
    c_scale = std::max(c_scale, std::abs(lp.objective()[j]));
  }
  for (int j = 0; j < f.n; ++j) f.c[j] = sense * lp.objective()[j] / c_scale;
  return f;
}

// Solves  [0 A' G'; A 0 0; G 0 -W] [dx; dy; dz] = [rx; ry; rz]  for the
// diagonal scaling W = diag(s ./ z), through the reduced (dx, dy) system
//   [G' W^-1 G + delta I, A'; A, -delta' I] [dx; dy] = [rx + G' W^-1 rz; ry].
class KktSolver {
 public:
  explicit KktSolver(const ConicForm& f) : f_(f), Gt_(f.G.transpose()) {}

  bool Factor(const Vec& w_inv) {
    w_inv_ = w_inv;
    const Vec sqrt_w = w_inv.cwiseSqrt();
    const SpMatR scaled = sqrt_w.asDiagonal() * f_.G;
    const SpMat scaled_col(scaled);
    H_ = SpMat(scaled_col.transpose() * scaled_col);
    if (perm_.size() == 0) ComputeOrdering();
    // Pivots of G'WG lose about eps * H(j,j) to cancellation near the
    // optimum, so each static shift scales with its own diagonal entry.
    double reg = kRegularization;
    for (int attempt = 0; attempt < 6; ++attempt, reg *= 100.0) {
      if (FactorWithShift(reg)) return true;
    }
    return false;
  }

  void Solve(const Vec& rx, const Vec& ry, const Vec& rz, Vec& dx, Vec& dy,
             Vec& dz) const {
    SolveReduced(rx, ry, rz, dx, dy, dz);
    // Refine against the full system: the reduced right-hand side carries
    // G' W^-1 rz, whose magnitude hides errors in the dual equations.
    for (int step = 0; step < kRefinementSteps; ++step) {
      const Vec e_x = rx - f_.A.transpose() * dy - Gt_ * dz;
      const Vec e_y = ry - f_.A * dx;
      const Vec e_z = rz - f_.G * dx + dz.cwiseQuotient(w_inv_);
      Vec cx, cy, cz;
      SolveReduced(e_x, e_y, e_z, cx, cy, cz);
      dx += cx;
      dy += cy;
      dz += cz;
    }
  }

 private:
  void SolveReduced(const Vec& rx, const Vec& ry, const Vec& rz, Vec& dx,
                    Vec& dy, Vec& dz) const {
    const int n = f_.n;
    const int p = static_cast<int>(f_.A.rows());
    Vec rhs(n + p);
    rhs.head(n) = rx + Gt_ * w_inv_.cwiseProduct(rz);
    rhs.tail(p) = ry;
    Vec sol = FactorSolve(rhs);
    // One step against the unregularized reduced matrix removes the bias
    // of the static shifts.
    Vec residual(n + p);
    residual.head(n) = rhs.head(n) - H_ * sol.head(n);
    if (p > 0) {
      residual.head(n) -= f_.A.transpose() * sol.tail(p);
      residual.tail(p) = rhs.tail(p) - f_.A * sol.head(n);
    }
    sol += FactorSolve(residual);
    dx = sol.head(n);
    dy = sol.tail(p);
    dz = w_inv_.cwiseProduct(f_.G * dx - rz);
  }

  // Orders the primal block by approximate minimum degree and puts the
  // equality rows last. Plain AMD on the whole matrix tends to eliminate
  // the dense-ish equality rows early, which fills in the primal block.
  // With few equality rows their dense Schur complement is cheap.
  void ComputeOrdering() {
    const int n = f_.n;
    const int p = static_cast<int>(f_.A.rows());
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> inverse;
    if (p <= kMaxTrailingRows) {
      SpMat pattern = H_;
      for (int j = 0; j < n; ++j) pattern.coeffRef(j, j) += 1.0;
      Eigen::AMDOrdering<int> amd;
      amd(pattern, inverse);
      const Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> primal =
          inverse.inverse();
      perm_.resize(n + p);
      for (int j = 0; j < n; ++j) perm_.indices()[j] = primal.indices()[j];
      for (int i = 0; i < p; ++i) perm_.indices()[n + i] = n + i;
    } else {
      SpMat pattern(n + p, n + p);
      BuildMatrix(0.0, /*permute=*/false, pattern);
      SpMat full = pattern.selfadjointView<Eigen::Lower>();
      Eigen::AMDOrdering<int> amd;
      amd(full, inverse);
      perm_ = inverse.inverse();
    }
  }

  // Assembles the lower triangle of the reduced matrix, optionally in the
  // permuted order.
  void BuildMatrix(double reg, bool permute, SpMat& K) const {
    const int n = f_.n;
    const int p = static_cast<int>(f_.A.rows());
    auto index = [&](int i) { return permute ? perm_.indices()[i] : i; };
    std::vector<Triplet> trip;
    trip.reserve(H_.nonZeros() / 2 + f_.A.nonZeros() + n + p);
    auto add = [&](int r, int c, double v) {
      const int pr = index(r);
      const int pc = index(c);
      trip.emplace_back(std::max(pr, pc), std::min(pr, pc), v);
    };
    for (int k = 0; k < H_.outerSize(); ++k) {
      for (SpMat::InnerIterator it(H_, k); it; ++it) {
        if (it.row() >= it.col()) add(it.row(), it.col(), it.value());
      }
    }
    const Vec diag = H_.diagonal();
    for (int j = 0; j < n; ++j) add(j, j, reg * (1.0 + diag[j]));
    for (int k = 0; k < f_.A.outerSize(); ++k) {
      for (SpMatR::InnerIterator it(f_.A, k); it; ++it) {
        add(n + it.row(), it.col(), it.value());
      }
    }
    for (int i = 0; i < p; ++i) add(n + i, n + i, -kDualRegularization);
    K.resize(n + p, n + p);
    K.setFromTriplets(trip.begin(), trip.end());
  }

  bool FactorWithShift(double reg) {
    SpMat K;
    BuildMatrix(reg, /*permute=*/true, K);
    ldlt_.compute(K);
    return ldlt_.info() == Eigen::Success;
  }

  Vec FactorSolve(const Vec& rhs) const {
    return perm_.transpose() * ldlt_.solve(perm_ * rhs);
  }

  static constexpr int kMaxTrailingRows = 2000;

  const ConicForm& f_;
  SpMat Gt_;
  SpMat H_;
  Vec w_inv_;
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> perm_;
  Eigen::SimplicialLDLT<SpMat, Eigen::Lower, Eigen::NaturalOrdering<int>> ldlt_;
};

double MaxStep(const Vec& v, const Vec& dv) {
  double alpha = 1e300;
  for (int i = 0; i < v.size(); ++i) {
    if (dv[i] < 0) alpha = std::min(alpha, -v[i] / dv[i]);
  }
  return alpha;
}

double MaxStepScalar(double v, double dv) {
  return dv < 0 ? -v / dv : 1e300;
}

double InfNorm(const Vec& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

}  // namespace

namespace {

absl::StatusOr<LpSolution> SolveConic(const ConicForm& f,
                                      const SolverOptions& options) {
  LpSolution solution;
  solution.algorithm_used = Algorithm::kInteriorPoint;
  const int n = f.n;
  const int m = static_cast<int>(f.G.rows());
  const int p = static_cast<int>(f.A.rows());

  // Convergence targets are tighter than the public tolerances so that the
  // final re-substitution check in Solve() has headroom.
  const double feas_target = std::min(1e-9, 1e-2 * options.feasibility_tolerance);
  const double gap_target = std::min(1e-10, 1e-2 * options.optimality_tolerance);
  const double infeas_target = 1e-9;
  const int max_iterations =
      options.max_iterations > 0 ? options.max_iterations : 200;
  const double res_scale_p = 1.0 + std::max(InfNorm(f.h), InfNorm(f.b));
  const double res_scale_d = 1.0 + InfNorm(f.c);

  KktSolver kkt(f);

  // Initial point: least-squares primal and dual estimates, shifted into the
  // interior of the orthant.
  Vec x, y, z, s;
  {
    if (!kkt.Factor(Vec::Ones(m))) {
      return NumericalFailureError("initial KKT factorization failed");
    }
    Vec dx, dy, dz;
    kkt.Solve(Vec::Zero(n), f.b, f.h, dx, dy, dz);
    x = dx;
    s = -dz;
    const double alpha_p = m > 0 ? -s.minCoeff() : -1.0;
    if (alpha_p >= 0) s.array() += 1.0 + alpha_p;
    kkt.Solve(-f.c, Vec::Zero(p), Vec::Zero(m), dx, dy, dz);
    y = dy;
    z = dz;
    const double alpha_d = m > 0 ? -z.minCoeff() : -1.0;
    if (alpha_d >= 0) z.array() += 1.0 + alpha_d;
  }
  double tau = 1.0;
  double kappa = 1.0;

  const Vec& c = f.c;
  const Vec& b = f.b;
  const Vec& h = f.h;
  const SpMat Gt = f.G.transpose();
  const SpMat At = f.A.transpose();

  // Set PRIVGAME_IPM_TRACE to print one line per iteration to stderr.
  const bool trace = std::getenv("PRIVGAME_IPM_TRACE") != nullptr;
  int stalled = 0;
  for (int iter = 0; iter <= max_iterations; ++iter) {
    solution.iterations = iter;
    const Vec Gx = f.G * x;
    const Vec Ax = f.A * x;
    const Vec Aty_Gtz = At * y + Gt * z;
    const Vec rx = Aty_Gtz + c * tau;
    const Vec ry = -Ax + b * tau;
    const Vec rz = -Gx + h * tau - s;
    const double cx = c.dot(x);
    const double by = b.dot(y);
    const double hz = h.dot(z);
    const double rt = -cx - by - hz - kappa;
    const double mu = (s.dot(z) + tau * kappa) / (m + 1);

    const double pres = std::max(InfNorm(ry), InfNorm(rz)) / tau / res_scale_p;
    const double dres = InfNorm(rx) / tau / res_scale_d;
    const double pcost = cx / tau;
    const double gap = s.dot(z) / (tau * tau);
    const bool gap_ok = gap <= gap_target * std::max(1.0, std::abs(pcost));
    if (!std::isfinite(pres) || !std::isfinite(dres) || !std::isfinite(gap)) {
      return NumericalFailureError("interior point iterates became non-finite");
    }
    if (trace) {
      std::fprintf(stderr,
                   "ipm %3d pres %.2e dres %.2e gap %.2e pcost %.6e tau %.2e "
                   "kappa %.2e\n",
                   iter, pres, dres, gap, pcost, tau, kappa);
    }
    if (pres <= feas_target && dres <= feas_target && gap_ok) {
      solution.status = SolveStatus::kOptimal;
      break;
    }
    if (tau < kappa) {
      const double by_hz = by + hz;
      if (by_hz < 0 && InfNorm(Aty_Gtz) / -by_hz <= infeas_target) {
        solution.status = SolveStatus::kInfeasible;
        return solution;
      }
      if (cx < 0 &&
          std::max(InfNorm(Ax), InfNorm(Gx + s)) / -cx <= infeas_target) {
        solution.status = SolveStatus::kUnbounded;
        return solution;
      }
    }
    if (iter == max_iterations || stalled >= 5) {
      // Accept a slightly looser optimum before giving up.
      if (pres <= 1e2 * feas_target && dres <= 1e2 * feas_target &&
          gap <= 1e2 * gap_target * std::max(1.0, std::abs(pcost))) {
        solution.status = SolveStatus::kOptimal;
        break;
      }
      return NumericalFailureError(absl::StrCat(
          "interior point did not converge after ", iter,
          " iterations (primal residual ", pres, ", dual residual ", dres,
          ", gap ", gap, ")"));
    }

    if (!kkt.Factor(z.cwiseQuotient(s))) {
      return NumericalFailureError("KKT factorization failed");
    }
    // Direction for the tau column.
    Vec dx2, dy2, dz2;
    kkt.Solve(-c, b, h, dx2, dy2, dz2);
    const double denom_base = -c.dot(dx2) - b.dot(dy2) - h.dot(dz2);

    auto direction = [&](double sigma, const Vec& r_sz, double r_tk, Vec& dx,
                         Vec& dy, Vec& dz, Vec& ds, double& dtau,
                         double& dkappa) {
      const double keep = 1.0 - sigma;
      const Vec bx = -keep * rx;
      const Vec by_ = -keep * ry;
      const Vec bz = -keep * rz + r_sz.cwiseQuotient(z);
      const double bt = -keep * rt + r_tk / tau;
      Vec dx1, dy1, dz1;
      kkt.Solve(bx, -by_, -bz, dx1, dy1, dz1);
      dtau = (bt + c.dot(dx1) + b.dot(dy1) + h.dot(dz1)) /
             (kappa / tau + denom_base);
      dx = dx1 + dtau * dx2;
      dy = dy1 + dtau * dy2;
      dz = dz1 + dtau * dz2;
      ds = (r_sz - s.cwiseProduct(dz)).cwiseQuotient(z);
      dkappa = (r_tk - kappa * dtau) / tau;
    };
    auto step_to_boundary = [&](const Vec& ds, const Vec& dz, double dtau,
                                double dkappa) {
      double a = std::min({MaxStep(s, ds), MaxStep(z, dz),
                           MaxStepScalar(tau, dtau),
                           MaxStepScalar(kappa, dkappa)});
      return a;
    };

    // Predictor.
    Vec dxa, dya, dza, dsa;
    double dta = 0, dka = 0;
    const Vec r_sz_aff = -s.cwiseProduct(z);
    direction(0.0, r_sz_aff, -tau * kappa, dxa, dya, dza, dsa, dta, dka);
    const double alpha_aff = std::min(1.0, step_to_boundary(dsa, dza, dta, dka));
    const double sigma = std::pow(1.0 - alpha_aff, 3);

    // Corrector.
    Vec dx, dy, dz, ds;
    double dt = 0, dk = 0;
    const Vec r_sz = (-s.cwiseProduct(z)).array() + sigma * mu -
                     dsa.cwiseProduct(dza).array();
    const double r_tk = -tau * kappa + sigma * mu - dta * dka;
    direction(sigma, r_sz, r_tk, dx, dy, dz, ds, dt, dk);
    const double alpha =
        std::min(1.0, kStepFraction * step_to_boundary(ds, dz, dt, dk));
    stalled = alpha < 1e-10 ? stalled + 1 : 0;

    x += alpha * dx;
    y += alpha * dy;
    z += alpha * dz;
    s += alpha * ds;
    tau += alpha * dt;
    kappa += alpha * dk;
  }

  solution.values.resize(n);
  for (int j = 0; j < n; ++j) solution.values[j] = x[j] / tau;
  return solution;
}

}  // namespace

absl::StatusOr<LpSolution> SolveInteriorPoint(const LinearProgram& lp,
                                              const SolverOptions& options) {
  ConicForm f = ToConicForm(lp, options.feasibility_tolerance);
  if (f.trivially_infeasible) {
    LpSolution solution;
    solution.algorithm_used = Algorithm::kInteriorPoint;
    solution.status = SolveStatus::kInfeasible;
    return solution;
  }
  PRIVGAME_ASSIGN_OR_RETURN(LpSolution solution, SolveConic(f, options));
  if (solution.status == SolveStatus::kUnbounded) {
    // A dual ray alone does not prove unboundedness; the primal may be empty
    // as well. Re-solve the pure feasibility problem to tell them apart.
    f.c.setZero();
    PRIVGAME_ASSIGN_OR_RETURN(LpSolution feasibility, SolveConic(f, options));
    if (feasibility.status == SolveStatus::kInfeasible) {
      solution.status = SolveStatus::kInfeasible;
    }
    solution.iterations += feasibility.iterations;
  }
  if (solution.status == SolveStatus::kOptimal) {
    solution.objective_value = lp.Evaluate(solution.values);
  } else {
    solution.values.clear();
  }
  return solution;
}

}  // namespace privgame::lp
