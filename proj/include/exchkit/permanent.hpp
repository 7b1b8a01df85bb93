#pragma once

// Matrix permanents perm(M) = sum over permutations s of prod_i M[i][s(i)].
//
// For an urn with slots x_1..x_n and weights lambda_1..lambda_n the matrix
// M[i][j] = lambda_i(x_j) has the normalizer of the urn-conditional law as its
// permanent, and the conditional marginals are ratios of permanents of minors.

#include <cstdint>
#include <span>
#include <vector>

#include "exchkit/core.hpp"
#include "exchkit/scaled_real.hpp"

namespace exchkit {

class WeightMatrix {
 public:
  WeightMatrix(int rows, int cols, std::vector<double> entries);

  /// M[i][j] = lambda_i(x_j) over the urn slots in ascending value order.
  static WeightMatrix from_urn(const WeightProfile& lambda, const Urn& urn);
  static WeightMatrix constant(int n, double value = 1.0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }
  const std::vector<double>& entries() const { return entries_; }

  WeightMatrix scale_row(int i, double factor) const;
  WeightMatrix permute_columns(std::span<const int> order) const;

 private:
  int rows_;
  int cols_;
  std::vector<double> entries_;
};

inline constexpr int kMaxNaiveOrder = 10;
inline constexpr int kMaxRyserOrder = 24;
inline constexpr int kMaxMinorTableOrder = 20;

/// Sum over all n! permutations. Reference evaluation, n <= 10.
ScaledReal permanent_naive(const WeightMatrix& m);

/// Ryser inclusion-exclusion over column subsets in Gray-code order with
/// compensated accumulation, after balancing rows and columns. n <= 24.
ScaledReal permanent_ryser(const WeightMatrix& m);

/// Permanent of the square submatrix left after removing the given rows and
/// columns; the empty matrix has permanent 1.
ScaledReal permanent_minor(const WeightMatrix& m, std::span<const int> drop_rows,
                           std::span<const int> drop_cols);

/// Permanents of the trailing minors of a square matrix, memoized by the
/// bitmask of dropped columns: entry `mask` is the permanent of rows
/// popcount(mask)..n-1 against the columns not in `mask`.
///
/// Filled by the positive-term recursion
///   minor(mask) = sum_{j not in mask} M[popcount(mask)][j] * minor(mask | j),
/// which needs no cancellation.
class MinorTable {
 public:
  explicit MinorTable(const WeightMatrix& m);

  int order() const { return n_; }
  ScaledReal minor(std::uint32_t mask) const;
  ScaledReal permanent() const { return minor(0); }

  /// M[row][col] * minor(mask | col) / minor(mask) with row = popcount(mask):
  /// the probability that the next row picks column `col`.
  double transition(std::uint32_t mask, int col) const;

 private:
  int n_;
  std::vector<double> scaled_;      // row-scaled matrix entries
  std::vector<double> table_;       // minors of the row-scaled matrix
  std::vector<double> row_log2_;    // log2 of the removed row scale, per row
};

}  // namespace exchkit
