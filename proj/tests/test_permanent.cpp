#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "exchkit/permanent.hpp"
#include "exchkit/rng.hpp"
#include "oracle.hpp"

using namespace exchkit;

namespace {

WeightMatrix random_matrix(Rng& rng, int n, double lo = 0.1, double hi = 1.0) {
  std::vector<double> e(static_cast<std::size_t>(n * n));
  for (double& x : e) x = rng.uniform(lo, hi);
  return WeightMatrix(n, n, e);
}

std::vector<std::vector<double>> nested(const WeightMatrix& m) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(m(i, j));
  }
  return out;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(ScaledReal, Arithmetic) {
  const auto a = ScaledReal::from_double(6.0);
  EXPECT_DOUBLE_EQ(a.mantissa(), 1.5);
  EXPECT_EQ(a.log2_scale(), 2);
  EXPECT_DOUBLE_EQ((a * ScaledReal::from_double(0.5)).to_double(), 3.0);
  EXPECT_DOUBLE_EQ((a + ScaledReal::from_double(2.0)).to_double(), 8.0);
  EXPECT_DOUBLE_EQ(a.ratio(ScaledReal::from_double(4.0)), 1.5);
  EXPECT_TRUE(ScaledReal::from_double(0.0).is_zero());
  const auto huge = ScaledReal::from_parts(1.0, 5000);
  EXPECT_TRUE(std::isinf(huge.to_double()));
  EXPECT_DOUBLE_EQ((huge / ScaledReal::from_parts(1.0, 4999)).to_double(), 2.0);
  EXPECT_LT(ScaledReal::from_double(3.0), ScaledReal::from_double(3.5));
}

TEST(PermanentNaive, Examples) {
  EXPECT_DOUBLE_EQ(permanent_naive(WeightMatrix(2, 2, {1, 1, 1, 2})).to_double(), 3.0);
  EXPECT_DOUBLE_EQ(permanent_naive(WeightMatrix::constant(3)).to_double(), 6.0);
  EXPECT_THROW(permanent_naive(WeightMatrix::constant(11)), InputError);
}

TEST(PermanentNaive, IdentityLikeMatrix) {
  // Entries must be positive, so approximate the identity and compare against the closed form.
  const double eps = 1e-9;
  std::vector<double> e(9, eps);
  e[0] = e[4] = e[8] = 1.0;
  const double want = 1.0 + 3 * eps * eps + 2 * eps * eps * eps;
  EXPECT_NEAR(permanent_naive(WeightMatrix(3, 3, e)).to_double(), want, 1e-15);
  EXPECT_NEAR(permanent_ryser(WeightMatrix(3, 3, e)).to_double(), want, 1e-12);
}

TEST(PermanentRyser, MatchesNaiveOnSixBySix) {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_matrix(rng, 6);
    EXPECT_LE(rel_err(permanent_ryser(m).to_double(), permanent_naive(m).to_double()), 1e-10);
  }
}

TEST(PermanentRyser, MatchesBruteForceOracle) {
  Rng rng(17);
  for (int n = 1; n <= 8; ++n) {
    const auto m = random_matrix(rng, n, 0.01, 3.0);
    EXPECT_LE(rel_err(permanent_ryser(m).to_double(), oracle::permanent(nested(m))), 1e-11) << n;
  }
}

TEST(PermanentRyser, RowScalingIsMultilinear) {
  Rng rng(3);
  const auto m = random_matrix(rng, 7);
  const std::vector<double> d{2.0, 0.5, 3.0, 1e-3, 7.0, 1.0, 1e4};
  WeightMatrix scaled = m;
  double prod = 1.0;
  for (int i = 0; i < 7; ++i) {
    scaled = scaled.scale_row(i, d[static_cast<std::size_t>(i)]);
    prod *= d[static_cast<std::size_t>(i)];
  }
  EXPECT_LE(rel_err(permanent_ryser(scaled).to_double(), prod * permanent_ryser(m).to_double()), 1e-12);
}

TEST(PermanentRyser, ColumnPermutationInvariant) {
  Rng rng(4);
  const auto m = random_matrix(rng, 8);
  const std::vector<int> order{3, 7, 0, 1, 6, 2, 5, 4};
  EXPECT_LE(rel_err(permanent_ryser(m.permute_columns(order)).to_double(), permanent_ryser(m).to_double()), 1e-12);
}

TEST(PermanentRyser, OnesIsFactorial) {
  EXPECT_EQ(permanent_ryser(WeightMatrix::constant(12)), ScaledReal::from_double(479001600.0));
  double fact = 1.0;
  for (int i = 2; i <= 20; ++i) fact *= i;
  // Inclusion-exclusion cancels about nine digits on a flat 20 x 20 matrix.
  EXPECT_LE(rel_err(permanent_ryser(WeightMatrix::constant(20)).to_double(), fact), 1e-8);
}

TEST(PermanentRyser, SizeGuard) {
  EXPECT_THROW(permanent_ryser(WeightMatrix::constant(25)), InputError);
  EXPECT_THROW(permanent_ryser(WeightMatrix(2, 3, {1, 1, 1, 1, 1, 1})), InputError);
}

TEST(PermanentRyser, ExtremeDynamicRangeStaysPositive) {
  Rng rng(8);
  std::vector<double> e(100);
  for (double& x : e) x = std::exp2(rng.uniform(-400.0, 400.0));
  const WeightMatrix m(10, 10, e);
  const auto ry = permanent_ryser(m);
  const auto nv = permanent_naive(m);
  EXPECT_FALSE(ry.is_zero());
  EXPECT_LE(std::abs(ry.ratio(nv) - 1.0), 1e-9);
}

TEST(PermanentMinor, Examples) {
  const WeightMatrix m(2, 2, {1, 1, 1, 2});
  const std::vector<int> all{0, 1};
  EXPECT_DOUBLE_EQ(permanent_minor(m, all, all).to_double(), 1.0);
  const std::vector<int> zero{0};
  EXPECT_DOUBLE_EQ(permanent_minor(m, zero, zero).to_double(), 2.0);
  const std::vector<int> one{1};
  EXPECT_THROW(permanent_minor(m, zero, all), InputError);
  EXPECT_DOUBLE_EQ(permanent_minor(m, one, zero).to_double(), 1.0);
}

TEST(PermanentMinor, RowExpansion) {
  Rng rng(12);
  const auto m = random_matrix(rng, 7);
  const std::vector<int> row0{0};
  double sum = 0.0;
  for (int j = 0; j < 7; ++j) {
    const std::vector<int> col{j};
    sum += m(0, j) * permanent_minor(m, row0, col).to_double();
  }
  EXPECT_LE(rel_err(sum, permanent_ryser(m).to_double()), 1e-12);
}

TEST(MinorTable, AgreesWithRyserAndTransitionsSumToOne) {
  Rng rng(21);
  const auto m = random_matrix(rng, 9, 0.05, 2.0);
  const MinorTable table(m);
  EXPECT_LE(rel_err(table.permanent().to_double(), permanent_ryser(m).to_double()), 1e-12);
  for (std::uint32_t mask : {0u, 1u, 6u, 0x55u, 0xF0u}) {
    double total = 0.0;
    for (int j = 0; j < 9; ++j) {
      if (!(mask & (1u << j))) total += table.transition(mask, j);
    }
    EXPECT_NEAR(total, 1.0, 1e-12) << mask;
    const int r = std::popcount(mask);
    std::vector<int> rows(static_cast<std::size_t>(r));
    std::iota(rows.begin(), rows.end(), 0);
    std::vector<int> cols;
    for (int j = 0; j < 9; ++j) {
      if (mask & (1u << j)) cols.push_back(j);
    }
    EXPECT_LE(rel_err(table.minor(mask).to_double(), permanent_minor(m, rows, cols).to_double()), 1e-12);
  }
}

TEST(WeightMatrix, FromUrn) {
  const WeightProfile lambda{{1, 1}, {1, 2}};
  const auto m = WeightMatrix::from_urn(lambda, Urn({1, 1}));
  EXPECT_DOUBLE_EQ(m(1, 1), 2.0);
  EXPECT_DOUBLE_EQ(m(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(permanent_ryser(m).to_double(), 3.0);
}
