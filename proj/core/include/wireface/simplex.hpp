#pragma once

#include <vector>

#include <Eigen/Dense>

namespace wireface {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

// Minimizes c^T x subject to A x <= b over x >= 0, via a two-phase dense
// tableau simplex with Bland's rule (deterministic, cycling-free).
LpResult solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c);

}  // namespace wireface
