#include "exchkit/extremal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "exchkit/permanent.hpp"
#include "exchkit/rng.hpp"

namespace exchkit {

namespace {

void check_guards(const WeightProfile& lambda, const Urn& urn, int k) {
  if (lambda.c() != urn.c()) throw InputError("urn and weight profile use different alphabets");
  if (lambda.n() != urn.n()) throw InputError("urn size must equal the number of weight functions");
  if (urn.n() > kMaxUrnSize) throw InputError("exact urn laws are limited to n <= 12");
  if (k < 1 || k > urn.n()) throw InputError("k must lie in [1, n]");
}

// Rows rescaled by powers of two so each has max in [0.5, 1); ratios of
// permanents that use every row once are unaffected.
std::vector<std::vector<double>> scaled_rows(const WeightProfile& lambda) {
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(lambda.n()));
  for (const auto& w : lambda.entries()) {
    int e = 0;
    std::frexp(w.max(), &e);
    std::vector<double> row = w.values();
    for (double& v : row) v = std::ldexp(v, -e);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Permanents of trailing row blocks against sub-multisets of the urn.
// Entry rem (mixed radix over 0..n_v) is the permanent of rows
// n-|rem|..n-1 against the columns of the multiset rem, where columns with
// the same value are identical:
//   G(rem) = sum_v rem_v * lambda_row(v) * G(rem - e_v),  row = n - |rem|.
class CountPermanents {
 public:
  CountPermanents(const std::vector<std::vector<double>>& rows, const Urn& urn)
      : counts_(urn.counts()), n_(urn.n()) {
    const std::size_t c = counts_.size();
    stride_.assign(c, 1);
    for (std::size_t v = 1; v < c; ++v) stride_[v] = stride_[v - 1] * static_cast<std::size_t>(counts_[v - 1] + 1);
    const std::size_t states = stride_[c - 1] * static_cast<std::size_t>(counts_[c - 1] + 1);
    table_.assign(states, 0.0);
    table_[0] = 1.0;
    std::vector<int> rem(c, 0);
    int size = 0;
    for (std::size_t idx = 1; idx < states; ++idx) {
      // advance the mixed-radix counter
      for (std::size_t v = 0; v < c; ++v) {
        if (rem[v] < counts_[v]) {
          ++rem[v];
          ++size;
          break;
        }
        size -= rem[v];
        rem[v] = 0;
      }
      const auto& row = rows[static_cast<std::size_t>(n_ - size)];
      double s = 0.0;
      for (std::size_t v = 0; v < c; ++v) {
        if (rem[v] > 0) s += rem[v] * row[v] * table_[idx - stride_[v]];
      }
      table_[idx] = s;
    }
  }

  std::size_t index(std::span<const int> rem) const {
    std::size_t idx = 0;
    for (std::size_t v = 0; v < rem.size(); ++v) idx += static_cast<std::size_t>(rem[v]) * stride_[v];
    return idx;
  }
  double at(std::span<const int> rem) const { return table_[index(rem)]; }
  double full() const { return table_.back(); }

 private:
  std::vector<int> counts_;
  int n_;
  std::vector<std::size_t> stride_;
  std::vector<double> table_;
};

// Depth-first walk over value tuples reachable without replacement. The
// visitor receives the tuple index, the product of lambda_i(z_i) * (count
// remaining before step i), and the remaining multiset.
void walk_reachable(const std::vector<std::vector<double>>& rows, const Urn& urn, int k,
                    const std::function<void(std::size_t, double, std::span<const int>)>& visit) {
  const int c = urn.c();
  std::vector<int> rem = urn.counts();
  std::function<void(int, std::size_t, double)> rec = [&](int depth, std::size_t index, double weight) {
    if (depth == k) {
      visit(index, weight, rem);
      return;
    }
    const auto& row = rows[static_cast<std::size_t>(depth)];
    for (int v = 0; v < c; ++v) {
      const int left = rem[static_cast<std::size_t>(v)];
      if (left == 0) continue;
      --rem[static_cast<std::size_t>(v)];
      rec(depth + 1, index * static_cast<std::size_t>(c) + static_cast<std::size_t>(v), weight * left * row[static_cast<std::size_t>(v)]);
      ++rem[static_cast<std::size_t>(v)];
    }
  };
  rec(0, 0, 1.0);
}

std::vector<std::vector<double>> weighted_iid_factors(const WeightProfile& lambda, const Urn& urn, int k) {
  std::vector<std::vector<double>> factors;
  factors.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    std::vector<double> f(static_cast<std::size_t>(urn.c()));
    double total = 0.0;
    for (int v = 0; v < urn.c(); ++v) {
      f[static_cast<std::size_t>(v)] = urn.count(v) * lambda[i][v];
      total += f[static_cast<std::size_t>(v)];
    }
    for (double& x : f) x /= total;
    factors.push_back(std::move(f));
  }
  return factors;
}

}  // namespace

bool reachable(const Urn& urn, std::span<const int> z) {
  std::vector<int> used(static_cast<std::size_t>(urn.c()), 0);
  for (int v : z) {
    if (++used[static_cast<std::size_t>(v)] > urn.count(v)) return false;
  }
  return true;
}

TupleDistribution urn_conditional(const WeightProfile& lambda, const Urn& urn, int k) {
  check_guards(lambda, urn, k);
  const auto rows = scaled_rows(lambda);
  const CountPermanents perms(rows, urn);
  const double total = perms.full();
  std::vector<double> probs(cell_count(urn.c(), k), 0.0);
  walk_reachable(rows, urn, k, [&](std::size_t index, double weight, std::span<const int> rem) {
    probs[index] = weight * perms.at(rem) / total;
  });
  return TupleDistribution(k, urn.c(), std::move(probs));
}

ExtremeLaw::ExtremeLaw(const WeightProfile& lambda, const Urn& urn)
    : urn_(urn), rows_(scaled_rows(lambda)) {
  check_guards(lambda, urn, urn.n());
  const CountPermanents perms(rows_, urn);
  double multiplicity = 1.0;
  for (int v = 0; v < urn.c(); ++v) {
    for (int f = 2; f <= urn.count(v); ++f) multiplicity *= f;
  }
  multiplicity_over_perm_ = multiplicity / perms.full();
}

double ExtremeLaw::probability(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != urn_.n()) throw InputError("ExtremeLaw: tuple length must be n");
  if (!reachable(urn_, x)) return 0.0;
  double prod = multiplicity_over_perm_;
  for (std::size_t i = 0; i < x.size(); ++i) prod *= rows_[i][static_cast<std::size_t>(x[i])];
  return prod;
}

TupleDistribution urn_conditional_slots(const WeightProfile& lambda, const Urn& urn, int k) {
  check_guards(lambda, urn, k);
  const int n = urn.n();
  double tuples = 1.0;
  for (int i = 0; i < k; ++i) tuples *= n - i;
  if (tuples > 1e8) throw InputError("urn_conditional_slots: too many index tuples to enumerate");
  const std::vector<int> slots = urn.slots();
  const MinorTable table(WeightMatrix::from_urn(lambda, urn));
  std::vector<double> probs(cell_count(urn.c(), k), 0.0);
  std::function<void(int, std::uint32_t, std::size_t, double)> rec =
      [&](int depth, std::uint32_t mask, std::size_t index, double weight) {
        if (depth == k) {
          probs[index] += weight;
          return;
        }
        for (int j = 0; j < n; ++j) {
          if ((mask >> j) & 1U) continue;
          rec(depth + 1, mask | (1U << j),
              index * static_cast<std::size_t>(urn.c()) + static_cast<std::size_t>(slots[static_cast<std::size_t>(j)]),
              weight * table.transition(mask, j));
        }
      };
  rec(0, 0U, 0, 1.0);
  return TupleDistribution(k, urn.c(), std::move(probs));
}

TupleDistribution urn_weighted_iid(const WeightProfile& lambda, const Urn& urn, int k) {
  check_guards(lambda, urn, k);
  return product_distribution(weighted_iid_factors(lambda, urn, k));
}

TupleSamples sample_urn_conditional(const WeightProfile& lambda, const Urn& urn,
                                    std::uint64_t seed, std::size_t draws) {
  check_guards(lambda, urn, urn.n());
  const int n = urn.n();
  const std::vector<int> slots = urn.slots();
  const MinorTable table(WeightMatrix::from_urn(lambda, urn));

  // Per-mask cumulative transition probabilities over the n columns.
  const std::size_t masks = std::size_t{1} << n;
  std::vector<double> cdf(masks * static_cast<std::size_t>(n), 0.0);
  for (std::uint32_t mask = 0; mask + 1 < masks; ++mask) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += table.transition(mask, j);
      cdf[mask * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = acc;
    }
  }

  Rng rng(seed);
  TupleSamples out;
  out.length = n;
  out.values.resize(draws * static_cast<std::size_t>(n));
  for (std::size_t d = 0; d < draws; ++d) {
    std::uint32_t mask = 0;
    for (int i = 0; i < n; ++i) {
      const double* row = &cdf[mask * static_cast<std::size_t>(n)];
      const double u = rng.uniform() * row[n - 1];
      int pick = -1;
      for (int j = 0; j < n; ++j) {
        if ((mask >> j) & 1U) continue;
        pick = j;  // last free column absorbs rounding at the top end
        if (u < row[j]) break;
      }
      mask |= 1U << pick;
      out.values[d * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = slots[static_cast<std::size_t>(pick)];
    }
  }
  return out;
}

std::vector<std::uint64_t> tuple_counts(const TupleSamples& samples, int c) {
  std::vector<std::uint64_t> counts(cell_count(c, samples.length), 0);
  for (std::size_t i = 0; i < samples.count(); ++i) ++counts[encode_tuple(samples[i], c)];
  return counts;
}

GoodnessOfFit chi_square_gof(std::span<const std::uint64_t> counts, const TupleDistribution& expected,
                             double level) {
  if (counts.size() != expected.size()) throw InputError("chi_square_gof: shape mismatch");
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  if (!(total > 0.0)) throw InputError("chi_square_gof: no samples");
  GoodnessOfFit fit;
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  int bins = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double e = expected[i] * total;
    const double o = static_cast<double>(counts[i]);
    if (e == 0.0) {
      if (o > 0.0) {
        // an impossible outcome was drawn
        fit.statistic = std::numeric_limits<double>::infinity();
      }
      continue;
    }
    if (e < 5.0) {
      pooled_obs += o;
      pooled_exp += e;
      continue;
    }
    fit.statistic += (o - e) * (o - e) / e;
    ++bins;
  }
  if (pooled_exp > 0.0) {
    fit.statistic += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
    ++bins;
  }
  fit.degrees_of_freedom = std::max(bins - 1, 0);
  if (fit.degrees_of_freedom == 0) {
    fit.accepted = std::isfinite(fit.statistic) && fit.statistic < 1e-9;
    fit.p_value = fit.accepted ? 1.0 : 0.0;
    return fit;
  }
  const boost::math::chi_squared dist(fit.degrees_of_freedom);
  fit.critical_value = boost::math::quantile(dist, level);
  fit.p_value = std::isfinite(fit.statistic) ? boost::math::cdf(boost::math::complement(dist, fit.statistic)) : 0.0;
  fit.accepted = fit.statistic <= fit.critical_value;
  return fit;
}

bool UrnGap::identity_holds() const {
  return std::abs(tv_exact - one_minus_q_support) <= kAbsTol;
}

UrnGap tv_urn_gap(const WeightProfile& lambda, const Urn& urn, int k) {
  check_guards(lambda, urn, k);
  const TupleDistribution p = urn_conditional(lambda, urn, k);
  const TupleDistribution q = urn_weighted_iid(lambda, urn, k);
  UrnGap gap;
  gap.tv_exact = tv_distance(p, q);

  double q_support = 0.0;
  double excess = -std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < q.size(); ++idx) {
    const std::vector<int> z = decode_tuple(idx, urn.c(), k);
    if (!reachable(urn, z)) continue;
    q_support += q[idx];
    if (q[idx] - p[idx] > excess) {
      excess = q[idx] - p[idx];
      gap.worst_tuple = idx;
    }
  }
  gap.one_minus_q_support = 1.0 - q_support;
  gap.max_domination_excess = excess;

  // sum over ordered distinct-slot choices of prod_i lambda_i(x_{j_i}) / S_i
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < lambda.n(); ++i) {
    std::vector<double> row = lambda[i].values();
    double s = 0.0;
    for (int v = 0; v < urn.c(); ++v) s += urn.count(v) * row[static_cast<std::size_t>(v)];
    for (double& x : row) x /= s;
    rows.push_back(std::move(row));
  }
  double distinct = 0.0;
  walk_reachable(rows, urn, k, [&](std::size_t, double weight, std::span<const int>) { distinct += weight; });
  gap.one_minus_q_distinct_slots = 1.0 - distinct;

  const int n = urn.n();
  double falling = 1.0;
  for (int i = 0; i < k; ++i) falling *= static_cast<double>(n - i) / n;
  gap.bound_rhs = (1.0 - falling) / lambda.ratio_product(k);
  return gap;
}

EstPQResult estpq_check_detailed(const WeightProfile& lambda, const Urn& urn, int k) {
  check_guards(lambda, urn, k);
  const WeightProfile flat = WeightProfile::uniform(lambda.n(), lambda.c());
  const TupleDistribution p = urn_conditional(lambda, urn, k);
  const TupleDistribution q = urn_weighted_iid(lambda, urn, k);
  const TupleDistribution po = urn_conditional(flat, urn, k);
  const TupleDistribution qo = urn_weighted_iid(flat, urn, k);
  const double inv_prod = 1.0 / lambda.ratio_product(lambda.n());

  EstPQResult result;
  result.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < p.size(); ++idx) {
    if (!(p[idx] > 0.0)) continue;
    const double lhs = q[idx] / p[idx] - 1.0;
    const double rhs = inv_prod * (qo[idx] / po[idx] - 1.0);
    ++result.checked;
    if (lhs - rhs < result.worst_margin) {
      result.worst_margin = lhs - rhs;
      result.worst_tuple = idx;
    }
  }
  result.holds = result.worst_margin >= -kAbsTol;
  return result;
}

bool estPQ_check(const WeightProfile& lambda, const Urn& urn, int k) {
  return estpq_check_detailed(lambda, urn, k).holds;
}

}  // namespace exchkit
