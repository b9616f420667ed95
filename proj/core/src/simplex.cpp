#include "wireface/simplex.hpp"

#include <cmath>
#include <limits>

namespace wireface {

namespace {

constexpr double kEps = 1e-9;

// Tableau layout: rows 0..m-1 are constraints, row m is the phase objective.
// Columns 0..n_total-1 are variables, column n_total is the RHS.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<int> basis;
  int m, n;

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int r = 0; r <= m; ++r) {
      if (r == row) continue;
      double factor = t(r, col);
      if (factor != 0.0) t.row(r) -= factor * t.row(row);
    }
    basis[row] = col;
  }

  // Bland's rule: entering = lowest-index column with a negative reduced
  // cost; leaving = min-ratio row, ties to the lowest basis index.
  // Returns kOptimal or kUnbounded.
  LpStatus run(int n_usable) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < n_usable; ++j) {
        if (t(m, j) < -kEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m; ++r) {
        if (t(r, enter) > kEps) {
          double ratio = t(r, n) / t(r, enter);
          if (ratio < best_ratio - kEps ||
              (ratio < best_ratio + kEps &&
               (leave < 0 || basis[r] < basis[leave]))) {
            best_ratio = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());

  // Standard form: A x + s = b with slacks s >= 0, then flip rows with a
  // negative RHS and add artificials for them.
  Eigen::MatrixXd eq(m, n + m);
  eq << a, Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd rhs = b;
  std::vector<int> artificial_rows;
  for (int r = 0; r < m; ++r) {
    if (rhs(r) < 0.0) {
      eq.row(r) = -eq.row(r);
      rhs(r) = -rhs(r);
      artificial_rows.push_back(r);
    }
  }
  const int n_art = static_cast<int>(artificial_rows.size());
  const int n_total = n + m + n_art;

  Tableau tab;
  tab.m = m;
  tab.n = n_total;
  tab.t = Eigen::MatrixXd::Zero(m + 1, n_total + 1);
  tab.t.block(0, 0, m, n + m) = eq;
  tab.t.block(0, n_total, m, 1) = rhs;
  tab.basis.assign(m, -1);
  for (int r = 0; r < m; ++r) tab.basis[r] = n + r;  // slack basis
  for (int i = 0; i < n_art; ++i) {
    int r = artificial_rows[i];
    tab.t(r, n + m + i) = 1.0;
    tab.basis[r] = n + m + i;
  }

  LpResult result;

  if (n_art > 0) {
    // Phase 1: minimize the artificial sum.
    for (int i = 0; i < n_art; ++i) tab.t(m, n + m + i) = 1.0;
    for (int i = 0; i < n_art; ++i) {
      tab.t.row(m) -= tab.t.row(artificial_rows[i]);
    }
    LpStatus st = tab.run(n_total);
    if (st == LpStatus::kUnbounded || tab.t(m, n_total) < -1e-7) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Drive any residual artificial out of the basis.
    for (int r = 0; r < m; ++r) {
      if (tab.basis[r] >= n + m) {
        int enter = -1;
        for (int j = 0; j < n + m; ++j) {
          if (std::abs(tab.t(r, j)) > kEps) {
            enter = j;
            break;
          }
        }
        if (enter >= 0) tab.pivot(r, enter);
      }
    }
  }

  // Phase 2 objective, priced out against the current basis.
  tab.t.row(m).setZero();
  for (int j = 0; j < n; ++j) tab.t(m, j) = c(j);
  for (int r = 0; r < m; ++r) {
    int bj = tab.basis[r];
    if (bj < n && c(bj) != 0.0) {
      tab.t.row(m) -= c(bj) * tab.t.row(r);
    }
  }
  // Artificial columns stay banned in phase 2.
  LpStatus st = tab.run(n + m);
  if (st == LpStatus::kUnbounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  result.status = LpStatus::kOptimal;
  result.x = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < m; ++r) {
    if (tab.basis[r] < n) result.x(tab.basis[r]) = tab.t(r, n_total);
  }
  result.objective = c.dot(result.x);
  return result;
}

}  // namespace wireface
