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

// Reference computations that share no code with the library: brute-force
// grid searches, exhaustive attack enumeration, closed-form bounds and a
// vertex-enumeration LP solver for tiny programs.

#ifndef PRIVGAME_TESTS_ORACLES_H_
#define PRIVGAME_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace privgame::testing {

using Matrix = std::vector<std::vector<double>>;

// Expected error sum_{s,o} pi(s) p(o|s) d(attack[o], s) of a deterministic
// attack mapping observable o to secret attack[o].
inline double DeterministicAttackError(const std::vector<double>& prior,
                                       const Matrix& mech, const Matrix& dist,
                                       const std::vector<int>& attack) {
  double total = 0.0;
  for (size_t s = 0; s < prior.size(); ++s) {
    for (size_t o = 0; o < mech[s].size(); ++o) {
      total += prior[s] * mech[s][o] * dist[attack[o]][s];
    }
  }
  return total;
}

// The adversary's best expected error, found by trying every deterministic
// attack (|S|^|O| of them). Randomized attacks cannot do better since the
// error is linear in each row of the attack.
inline double ExhaustiveAttackError(const std::vector<double>& prior,
                                    const Matrix& mech, const Matrix& dist) {
  const int num_secrets = static_cast<int>(prior.size());
  const int num_obs = static_cast<int>(mech[0].size());
  std::vector<int> attack(num_obs, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    best = std::min(best, DeterministicAttackError(prior, mech, dist, attack));
    int k = 0;
    while (k < num_obs && ++attack[k] == num_secrets) attack[k++] = 0;
    if (k == num_obs) break;
  }
  return best;
}

// Largest distortion any mechanism can force: the adversary can always
// ignore the observation and answer the single best guess.
inline double ClosedFormMaxDistortion(const std::vector<double>& prior,
                                      const Matrix& dist) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t guess = 0; guess < prior.size(); ++guess) {
    double total = 0.0;
    for (size_t s = 0; s < prior.size(); ++s) {
      total += prior[s] * dist[guess][s];
    }
    best = std::min(best, total);
  }
  return best;
}

inline double ExpectedCost(const std::vector<double>& prior,
                           const Matrix& mech, const Matrix& cost) {
  double total = 0.0;
  for (size_t s = 0; s < prior.size(); ++s) {
    for (size_t o = 0; o < mech[s].size(); ++o) {
      total += prior[s] * mech[s][o] * cost[o][s];
    }
  }
  return total;
}

// p(o|s) <= exp(eps * d(s, s')) p(o|s') for all o and s != s'.
inline bool SatisfiesDifferential(const Matrix& mech, const Matrix& disting,
                                  double eps, double slack = 1e-12) {
  for (size_t s = 0; s < mech.size(); ++s) {
    for (size_t t = 0; t < mech.size(); ++t) {
      if (s == t) continue;
      const double factor = std::exp(eps * disting[s][t]);
      for (size_t o = 0; o < mech[s].size(); ++o) {
        if (mech[s][o] > factor * mech[t][o] + slack) return false;
      }
    }
  }
  return true;
}

struct GridSearchResult {
  double cost = std::numeric_limits<double>::infinity();
  double a = 0.0;  // p(o1|s1)
  double b = 0.0;  // p(o1|s2)
  bool found = false;
};

// Minimizes the expected cost of the two-secret, two-observable mechanism
// [[a, 1-a], [b, 1-b]] over a grid of step `step`, keeping mechanisms that
// satisfy `feasible`.
inline GridSearchResult GridSearch2x2(
    const std::vector<double>& prior, const Matrix& cost, double step,
    const std::function<bool(const Matrix&)>& feasible) {
  GridSearchResult best;
  const int n = static_cast<int>(std::lround(1.0 / step));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double a = i * step;
      const double b = j * step;
      const Matrix mech = {{a, 1.0 - a}, {b, 1.0 - b}};
      if (!feasible(mech)) continue;
      const double c = ExpectedCost(prior, mech, cost);
      if (c < best.cost - 1e-15) best = {c, a, b, true};
    }
  }
  return best;
}

// Solves min c'x s.t. A x <= b for tiny dense programs by enumerating
// every basis of n active constraints. Returns nothing when infeasible;
// assumes the optimum is attained at a vertex (bounded feasible region).
inline std::optional<double> VertexEnumerationMin(const std::vector<double>& c,
                                                  const Matrix& A,
                                                  const std::vector<double>& b,
                                                  double tol = 1e-9) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(A.size());
  std::optional<double> best;
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  if (m < n) return best;
  while (true) {
    // Gaussian elimination with partial pivoting on the picked rows.
    Matrix M(n, std::vector<double>(n + 1));
    for (int r = 0; r < n; ++r) {
      for (int k = 0; k < n; ++k) M[r][k] = A[pick[r]][k];
      M[r][n] = b[pick[r]];
    }
    bool singular = false;
    for (int col = 0; col < n && !singular; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r) {
        if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
      }
      if (std::abs(M[piv][col]) < 1e-12) {
        singular = true;
        break;
      }
      std::swap(M[piv], M[col]);
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        const double f = M[r][col] / M[col][col];
        for (int k = col; k <= n; ++k) M[r][k] -= f * M[col][k];
      }
    }
    if (!singular) {
      std::vector<double> x(n);
      for (int r = 0; r < n; ++r) x[r] = M[r][n] / M[r][r];
      bool ok = true;
      for (int r = 0; r < m && ok; ++r) {
        double lhs = 0.0;
        for (int k = 0; k < n; ++k) lhs += A[r][k] * x[k];
        ok = lhs <= b[r] + tol;
      }
      if (ok) {
        double value = 0.0;
        for (int k = 0; k < n; ++k) value += c[k] * x[k];
        if (!best.has_value() || value < *best) best = value;
      }
    }
    // Next combination of n rows out of m.
    int i = n - 1;
    while (i >= 0 && pick[i] == m - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int k = i + 1; k < n; ++k) pick[k] = pick[k - 1] + 1;
  }
  return best;
}

// A random instance with secrets and observables placed in the unit
// square; distances are Euclidean between the placed points.
struct RandomInstance {
  std::vector<double> prior;
  Matrix mech;      // |S| x |O|
  Matrix privacy;   // |S| x |S|, d(s_hat, s)
  Matrix cost;      // |O| x |S|
};

inline std::vector<double> RandomSimplexPoint(int n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> v(n);
  double total = 0.0;
  for (double& x : v) total += (x = expo(rng));
  for (double& x : v) x /= total;
  return v;
}

inline RandomInstance MakeRandomInstance(int num_secrets, int num_obs,
                                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, double>> sp(num_secrets), op(num_obs);
  for (auto& p : sp) p = {unit(rng), unit(rng)};
  for (auto& p : op) p = {unit(rng), unit(rng)};
  auto dist = [](std::pair<double, double> a, std::pair<double, double> b) {
    return std::hypot(a.first - b.first, a.second - b.second);
  };
  RandomInstance inst;
  inst.prior = RandomSimplexPoint(num_secrets, rng);
  for (int s = 0; s < num_secrets; ++s) {
    inst.mech.push_back(RandomSimplexPoint(num_obs, rng));
  }
  inst.privacy.assign(num_secrets, std::vector<double>(num_secrets));
  for (int a = 0; a < num_secrets; ++a) {
    for (int s = 0; s < num_secrets; ++s) inst.privacy[a][s] = dist(sp[a], sp[s]);
  }
  inst.cost.assign(num_obs, std::vector<double>(num_secrets));
  for (int o = 0; o < num_obs; ++o) {
    for (int s = 0; s < num_secrets; ++s) inst.cost[o][s] = dist(op[o], sp[s]);
  }
  return inst;
}

inline double Median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace privgame::testing

#endif  // PRIVGAME_TESTS_ORACLES_H_
