#include "exchkit/simplex.hpp"

#include <cmath>
#include <limits>

#include "exchkit/core.hpp"

namespace exchkit {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  // Row `rows_` holds reduced costs; its rhs holds -objective.
  double& cost(std::size_t c) { return at(rows_, c); }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) /= p;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

// Runs simplex iterations over columns [0, active). Returns false if unbounded.
bool iterate(Tableau& t, std::vector<std::size_t>& basis, std::size_t active, double eps, int& pivots) {
  for (;;) {
    std::size_t enter = active;
    for (std::size_t j = 0; j < active; ++j) {
      if (t.cost(j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter == active) return true;
    std::size_t leave = t.rows();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= eps) continue;
      const double ratio = t.rhs(i) / a;
      if (ratio < best - eps || (std::abs(ratio - best) <= eps && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == t.rows()) return false;
    t.pivot(leave, enter);
    basis[leave] = enter;
    ++pivots;
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, double eps) {
  const std::size_t m = lp.b_eq.size();
  const std::size_t n = lp.cost.size();
  if (lp.a_eq.size() != m) throw InputError("solve_lp: constraint rows and rhs differ in length");
  for (const auto& row : lp.a_eq) {
    if (row.size() != n) throw InputError("solve_lp: constraint row has the wrong width");
  }

  // Columns: n structural, then m artificial.
  Tableau t(m, n + m);
  std::vector<std::size_t> basis(m + 1, n + m);  // sentinel slot for Bland tie-breaks
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = lp.b_eq[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign * lp.a_eq[i][j];
    t.at(i, n + i) = 1.0;
    t.rhs(i) = sign * lp.b_eq[i];
    basis[i] = n + i;
  }

  LpSolution sol;
  // Phase 1: minimize the sum of artificials.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.cost(j) -= t.at(i, j);
    t.rhs(m) -= t.rhs(i);
  }
  for (std::size_t j = n; j < n + m; ++j) t.cost(j) = 0.0;
  iterate(t, basis, n + m, eps, sol.pivots);
  if (-t.rhs(m) > 1e-9) {
    sol.status = LpStatus::infeasible;
    return sol;
  }
  // Drive remaining artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(t.at(i, j)) > 1e-9) {
        t.pivot(i, j);
        basis[i] = j;
        ++sol.pivots;
        break;
      }
    }
  }

  // Phase 2: original objective in reduced form.
  for (std::size_t j = 0; j <= n + m; ++j) t.cost(j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) t.cost(j) = lp.cost[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = basis[i];
    if (b >= n) continue;
    const double cb = lp.cost[b];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= n + m; ++j) t.cost(j) -= cb * t.at(i, j);
  }
  // Artificials stuck in the basis sit on redundant rows at value 0; they
  // are never allowed to re-enter.
  if (!iterate(t, basis, n, eps, sol.pivots)) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  sol.status = LpStatus::optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) sol.x[basis[i]] = t.rhs(i);
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.cost[j] * sol.x[j];
  return sol;
}

}  // namespace exchkit
