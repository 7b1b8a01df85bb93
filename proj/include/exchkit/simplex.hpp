#pragma once

#include <vector>

namespace exchkit {

/// minimize c^T x  subject to  A x = b,  x >= 0.
/// A is row-major with rows() = b.size() and cols() = c.size().
struct LinearProgram {
  std::vector<double> cost;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> x;
  int pivots = 0;
};

/// Dense two-phase tableau simplex with Bland's anti-cycling rule.
LpSolution solve_lp(const LinearProgram& lp, double eps = 1e-11);

}  // namespace exchkit
