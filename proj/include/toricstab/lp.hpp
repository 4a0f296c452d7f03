#pragma once

// Exact rational simplex method with Bland's rule, in standard equality
// form: min c^T x subject to A x = b, x >= 0. Phase one either produces a
// feasible basis or an exact Farkas certificate of infeasibility. Instances
// here are tiny, so a dense tableau is the right tool.

#include <vector>

#include "toricstab/rational.hpp"

namespace toricstab {
namespace lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  QVec x;             // primal solution over the original columns
  Rational objective; // c^T x at the optimum
  QVec farkas;        // infeasible case: y with y^T A <= 0 and y^T b > 0
};

namespace detail {

struct Tableau {
  int rows = 0, cols = 0;          // cols excludes the rhs
  QMat t;                          // rows x cols
  QVec rhs;                        // length rows, kept nonnegative
  QVec cost;                       // reduced cost row, length cols
  std::vector<int> basis;          // basic column per row

  void pivot(int prow, int pcol) {
    const Rational inv = Rational(1) / t[prow][pcol];
    for (int j = 0; j < cols; ++j) t[prow][j] *= inv;
    rhs[prow] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == prow || t[r][pcol] == 0) continue;
      const Rational f = t[r][pcol];
      for (int j = 0; j < cols; ++j) t[r][j] -= f * t[prow][j];
      rhs[r] -= f * rhs[prow];
    }
    if (cost[pcol] != 0) {
      const Rational f = cost[pcol];
      for (int j = 0; j < cols; ++j) cost[j] -= f * t[prow][j];
    }
    basis[prow] = pcol;
  }

  // Objective of the current basis under the full cost vector.
  Rational basis_objective(const QVec& full_cost) const {
    Rational v = 0;
    for (int r = 0; r < rows; ++r) v += full_cost[basis[r]] * rhs[r];
    return v;
  }

  // Bland: entering column is the smallest index with negative reduced
  // cost; leaving row breaks ratio ties by smallest basic column.
  // Returns false when the problem is unbounded.
  bool iterate() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols; ++j)
        if (cost[j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int r = 0; r < rows; ++r) {
        if (t[r][enter] <= 0) continue;
        const Rational ratio = rhs[r] / t[r][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace detail

// min c^T x s.t. A x = b, x >= 0, all data exact.
inline Result solve(QMat a, QVec b, const QVec& c) {
  const int m = static_cast<int>(a.size());
  const int n = m ? static_cast<int>(a[0].size()) : static_cast<int>(c.size());
  std::vector<int> flipped(m, 0);
  for (int r = 0; r < m; ++r) {
    if (b[r] < 0) {
      flipped[r] = 1;
      b[r] = -b[r];
      for (auto& v : a[r]) v = -v;
    }
  }

  detail::Tableau tab;
  tab.rows = m;
  tab.cols = n + m;
  tab.t.assign(m, QVec(tab.cols, Rational(0)));
  tab.rhs = b;
  tab.basis.resize(m);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) tab.t[r][j] = a[r][j];
    tab.t[r][n + r] = 1;
    tab.basis[r] = n + r;
  }
  // Phase one: minimize the sum of artificials.
  tab.cost.assign(tab.cols, Rational(0));
  for (int r = 0; r < m; ++r)
    for (int j = 0; j < n; ++j) tab.cost[j] -= tab.t[r][j];
  if (!tab.iterate()) throw internal_error("phase one cannot be unbounded");
  QVec phase1_cost(tab.cols, Rational(0));
  for (int j = n; j < tab.cols; ++j) phase1_cost[j] = 1;

  Result res;
  if (tab.basis_objective(phase1_cost) > 0) {
    res.status = Status::infeasible;
    // Dual vector from the reduced costs of the artificial columns:
    // y_i = 1 - cost[n+i]; then y^T A <= 0 and y^T b > 0 exactly.
    res.farkas.assign(m, Rational(0));
    for (int r = 0; r < m; ++r) {
      res.farkas[r] = Rational(1) - tab.cost[n + r];
      if (flipped[r]) res.farkas[r] = -res.farkas[r];
    }
    return res;
  }

  // Remove artificials from the basis; a row whose artificial cannot be
  // pivoted out is redundant and is dropped.
  for (int r = m - 1; r >= 0; --r) {
    if (tab.basis[r] < n) continue;
    int pcol = -1;
    for (int j = 0; j < n; ++j)
      if (tab.t[r][j] != 0) {
        pcol = j;
        break;
      }
    if (pcol >= 0) {
      tab.pivot(r, pcol);
      continue;
    }
    tab.t.erase(tab.t.begin() + r);
    tab.rhs.erase(tab.rhs.begin() + r);
    tab.basis.erase(tab.basis.begin() + r);
    --tab.rows;
  }

  // Phase two over the original columns only.
  tab.cols = n;
  for (auto& row : tab.t) row.resize(n);
  // reduced costs: c - c_B B^{-1} A
  tab.cost.assign(n, Rational(0));
  for (int j = 0; j < n; ++j) tab.cost[j] = c[j];
  for (int r = 0; r < tab.rows; ++r) {
    const Rational cb = c[tab.basis[r]];
    if (cb == 0) continue;
    for (int j = 0; j < n; ++j) tab.cost[j] -= cb * tab.t[r][j];
  }
  if (!tab.iterate()) {
    res.status = Status::unbounded;
    return res;
  }
  res.status = Status::optimal;
  res.x.assign(n, Rational(0));
  for (int r = 0; r < tab.rows; ++r) res.x[tab.basis[r]] = tab.rhs[r];
  res.objective = 0;
  for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

// Feasibility of { A x = b, x >= 0 }.
inline Result feasible(const QMat& a, const QVec& b) {
  const int n = a.empty() ? 0 : static_cast<int>(a[0].size());
  return solve(a, b, QVec(n, Rational(0)));
}

}  // namespace lp
}  // namespace toricstab
