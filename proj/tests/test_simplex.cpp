#include <gtest/gtest.h>

#include "exchkit/simplex.hpp"

using namespace exchkit;

TEST(Simplex, SmallStandardForm) {
  // min -x - y  s.t.  x + s1 = 2,  y + s2 = 3,  x + y + s3 = 4
  const LinearProgram lp{{-1, -1, 0, 0, 0},
                         {{1, 0, 1, 0, 0}, {0, 1, 0, 1, 0}, {1, 1, 0, 0, 1}},
                         {2, 3, 4}};
  const auto sol = solve_lp(lp);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_NEAR(sol.objective, -4.0, 1e-12);
  EXPECT_NEAR(sol.x[0] + sol.x[1], 4.0, 1e-12);
}

TEST(Simplex, Infeasible) {
  const LinearProgram lp{{1, 1}, {{1, 1}, {1, 1}}, {1, 2}};
  EXPECT_EQ(solve_lp(lp).status, LpStatus::infeasible);
}

TEST(Simplex, Unbounded) {
  const LinearProgram lp{{-1, 0}, {{1, -1}}, {1}};
  EXPECT_EQ(solve_lp(lp).status, LpStatus::unbounded);
}

TEST(Simplex, RedundantConstraintsAndNegativeRhs) {
  // x - y = -1, 2x - 2y = -2, x + y = 3: x = 1, y = 2.
  const LinearProgram lp{{1, 0}, {{1, -1}, {2, -2}, {1, 1}}, {-1, -2, 3}};
  const auto sol = solve_lp(lp);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_NEAR(sol.x[0], 1.0, 1e-12);
  EXPECT_NEAR(sol.x[1], 2.0, 1e-12);
}

TEST(Simplex, DegenerateDoesNotCycle) {
  // A classic cycling example for the largest-coefficient rule.
  const LinearProgram lp{{-0.75, 150, -0.02, 6, 0, 0, 0},
                         {{0.25, -60, -0.04, 9, 1, 0, 0}, {0.5, -90, -0.02, 3, 0, 1, 0}, {0, 0, 1, 0, 0, 0, 1}},
                         {0, 0, 1}};
  const auto sol = solve_lp(lp);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_NEAR(sol.objective, -0.05, 1e-12);
}
