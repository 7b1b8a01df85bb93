#pragma once

// Brute-force reference computations used to check the library. Everything
// here enumerates permutations or tuples directly and shares no code with
// the routines under test beyond the value types.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "exchkit/core.hpp"

namespace oracle {

using Table = std::vector<double>;

inline std::size_t power(int c, int k) {
  std::size_t out = 1;
  for (int i = 0; i < k; ++i) out *= static_cast<std::size_t>(c);
  return out;
}

inline std::size_t index_of(const std::vector<int>& x, int c, int k) {
  std::size_t idx = 0;
  for (int i = 0; i < k; ++i) idx = idx * static_cast<std::size_t>(c) + static_cast<std::size_t>(x[static_cast<std::size_t>(i)]);
  return idx;
}

inline std::vector<int> tuple_of(std::size_t idx, int c, int k) {
  std::vector<int> x(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    x[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(c));
    idx /= static_cast<std::size_t>(c);
  }
  return x;
}

/// Sum over all n! arrangements of prod_i m[i][s(i)].
inline double permanent(const std::vector<std::vector<double>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 0);
  long double total = 0.0L;
  do {
    long double prod = 1.0L;
    for (int i = 0; i < n; ++i) prod *= m[static_cast<std::size_t>(i)][static_cast<std::size_t>(s[static_cast<std::size_t>(i)])];
    total += prod;
  } while (std::next_permutation(s.begin(), s.end()));
  return static_cast<double>(total);
}

/// k-marginal of the law on arrangements of the urn slots with mass
/// proportional to prod_i lambda_i(slot_{s(i)}).
inline Table urn_law(const std::vector<std::vector<double>>& lambda, const std::vector<int>& counts, int k) {
  const int c = static_cast<int>(counts.size());
  std::vector<int> slots;
  for (int v = 0; v < c; ++v) slots.insert(slots.end(), static_cast<std::size_t>(counts[static_cast<std::size_t>(v)]), v);
  const int n = static_cast<int>(slots.size());
  std::vector<int> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 0);
  Table out(power(c, k), 0.0);
  double total = 0.0;
  do {
    double w = 1.0;
    std::vector<int> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] = slots[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])];
      w *= lambda[static_cast<std::size_t>(i)][static_cast<std::size_t>(x[static_cast<std::size_t>(i)])];
    }
    out[index_of(x, c, k)] += w;
    total += w;
  } while (std::next_permutation(s.begin(), s.end()));
  for (double& v : out) v /= total;
  return out;
}

/// Independent coordinates with P(X_i = v) proportional to counts[v] * lambda_i(v).
inline Table urn_iid(const std::vector<std::vector<double>>& lambda, const std::vector<int>& counts, int k) {
  const int c = static_cast<int>(counts.size());
  Table out(power(c, k), 0.0);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    const auto x = tuple_of(idx, c, k);
    double p = 1.0;
    for (int i = 0; i < k; ++i) {
      double z = 0.0;
      for (int v = 0; v < c; ++v) z += counts[static_cast<std::size_t>(v)] * lambda[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)];
      const int xi = x[static_cast<std::size_t>(i)];
      p *= counts[static_cast<std::size_t>(xi)] * lambda[static_cast<std::size_t>(i)][static_cast<std::size_t>(xi)] / z;
    }
    out[idx] = p;
  }
  return out;
}

inline std::vector<int> counts_of(const std::vector<int>& x, int c) {
  std::vector<int> counts(static_cast<std::size_t>(c), 0);
  for (int v : x) ++counts[static_cast<std::size_t>(v)];
  return counts;
}

/// Type-class masses of a law on X^n.
inline std::map<std::vector<int>, double> type_masses(const Table& p, int c, int n) {
  std::map<std::vector<int>, double> out;
  for (std::size_t idx = 0; idx < p.size(); ++idx) out[counts_of(tuple_of(idx, c, n), c)] += p[idx];
  return out;
}

/// sum_U P(type U) * urn_iid(U) restricted to the first k coordinates.
inline Table constructed_q(const Table& p, const std::vector<std::vector<double>>& lambda, int c, int n, int k) {
  Table out(power(c, k), 0.0);
  for (const auto& [counts, w] : type_masses(p, c, n)) {
    if (w <= 0.0) continue;
    const Table q = urn_iid(lambda, counts, k);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * q[i];
  }
  return out;
}

inline Table marginal(const Table& p, int c, int n, int k) {
  Table out(power(c, k), 0.0);
  const std::size_t block = power(c, n - k);
  for (std::size_t idx = 0; idx < p.size(); ++idx) out[idx / block] += p[idx];
  return out;
}

inline double tv(const Table& a, const Table& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

inline double falling_ratio(int n, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= static_cast<double>(n - i) / n;
  return out;
}

}  // namespace oracle
