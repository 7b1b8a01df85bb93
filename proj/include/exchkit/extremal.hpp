#pragma once

// Extreme points of the lambda-exchangeable laws and their weighted i.i.d.
// counterparts on a fixed urn.
//
// Given an urn with slots x_1..x_n, the extreme point P_{U,n} puts mass
// proportional to prod_i lambda_i(x_{s(i)}) on each arrangement s of the
// slots. Its k-marginal P_{U,k} gives an ordered choice (j_1..j_k) of distinct
// slots the weight
//
//   prod_{i<=k} lambda_i(x_{j_i}) * perm(M[k+1..n][slots not chosen]) / perm(M).
//
// Q_{U,k} instead draws coordinate i independently with P(X_i = x_j)
// proportional to lambda_i(x_j), i.e. with replacement.

#include <cstdint>
#include <span>
#include <vector>

#include "exchkit/core.hpp"

namespace exchkit {

inline constexpr int kMaxUrnSize = 12;

/// P_{U,k} over value tuples. Slots with equal values are merged by counting,
/// so the cost is c^k * k rather than (n)_k.
TupleDistribution urn_conditional(const WeightProfile& lambda, const Urn& urn, int k);

/// P_{U,k} built over index tuples of distinct slots with a bitmask-keyed
/// minor table, then pushed forward to value tuples. Same law as
/// urn_conditional; kept as an independent route.
TupleDistribution urn_conditional_slots(const WeightProfile& lambda, const Urn& urn, int k);

/// P_{U,n} evaluated one full tuple at a time: for x in the type class of
/// the urn, P(x) = prod_i lambda_i(x_i) * prod_v n_v! / perm(M), else 0.
class ExtremeLaw {
 public:
  ExtremeLaw(const WeightProfile& lambda, const Urn& urn);

  const Urn& urn() const { return urn_; }
  double probability(std::span<const int> x) const;

 private:
  Urn urn_;
  std::vector<std::vector<double>> rows_;  // power-of-two rescaled weights
  double multiplicity_over_perm_ = 0.0;
};

/// Q_{U,k}: independent coordinates, X_i = v with probability
/// n_v * lambda_i(v) / sum_u n_u * lambda_i(u).
TupleDistribution urn_weighted_iid(const WeightProfile& lambda, const Urn& urn, int k);

/// Flat storage for N tuples of a fixed length.
struct TupleSamples {
  int length = 0;
  std::vector<int> values;

  std::size_t count() const { return length ? values.size() / static_cast<std::size_t>(length) : 0; }
  std::span<const int> operator[](std::size_t i) const {
    return {values.data() + i * static_cast<std::size_t>(length), static_cast<std::size_t>(length)};
  }
};

/// Exact draws from P_{U,n}: row i picks slot j among the unused ones with
/// probability lambda_i(x_j) * perm(minor) / perm(current block). Deterministic
/// in the seed.
TupleSamples sample_urn_conditional(const WeightProfile& lambda, const Urn& urn,
                                    std::uint64_t seed, std::size_t draws);

/// Occurrences of each tuple index.
std::vector<std::uint64_t> tuple_counts(const TupleSamples& samples, int c);

struct GoodnessOfFit {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double critical_value = 0.0;  // upper quantile at the requested level
  double p_value = 1.0;
  bool accepted = true;
};

/// Pearson chi-square test of sample counts against an exact law. Cells with
/// expected count below 5 are pooled into one bin.
GoodnessOfFit chi_square_gof(std::span<const std::uint64_t> counts,
                             const TupleDistribution& expected, double level = 0.999);

struct UrnGap {
  double tv_exact = 0.0;
  /// 1 - Q_{U,k}(value tuples reachable without replacement).
  double one_minus_q_support = 0.0;
  /// 1 - Q_{U,k}(ordered choices of distinct slots), the closed form over slots.
  double one_minus_q_distinct_slots = 0.0;
  /// (prod_{i<=k} r_i)^{-1} * (1 - (n)_k / n^k).
  double bound_rhs = 0.0;
  /// max over reachable z of Q(z) - P(z); <= 0 means Q is dominated by P.
  double max_domination_excess = 0.0;
  std::size_t worst_tuple = 0;

  bool dominated() const { return max_domination_excess <= kAbsTol; }
  bool identity_holds() const;
  bool within_bound() const { return tv_exact <= bound_rhs + kAbsTol; }
};

UrnGap tv_urn_gap(const WeightProfile& lambda, const Urn& urn, int k);

struct EstPQResult {
  bool holds = true;
  /// min over the support of lhs - rhs.
  double worst_margin = 0.0;
  std::size_t worst_tuple = 0;
  std::size_t checked = 0;
};

/// Q/P - 1 >= (prod_{i<=n} r_i)^{-1} (Q_o/P_o - 1) on the support of P_{U,k},
/// where P_o, Q_o are the unweighted counterparts on the same urn.
EstPQResult estpq_check_detailed(const WeightProfile& lambda, const Urn& urn, int k);
bool estPQ_check(const WeightProfile& lambda, const Urn& urn, int k);

/// Whether the value tuple z can be drawn from the urn without replacement.
bool reachable(const Urn& urn, std::span<const int> z);

}  // namespace exchkit
