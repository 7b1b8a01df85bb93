#pragma once

// Approximation bounds for lambda-exchangeable laws by mixtures of weighted
// i.i.d. laws, and exact certification of them on enumerable instances.
//
// The approximant is the constructed Q_n = sum_U w_U Q_{U,n}, where w_U are
// the extreme-point weights of P_n. Two bounds are checked on every k:
//
//   general: k(k-1)/(2n) * (prod_{i<=k} r_i)^{-1}
//   finite:  (c k / n)   * (prod_{i<=n} r_i)^{-2}

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "exchkit/core.hpp"
#include "exchkit/decompose.hpp"

namespace exchkit {

double bound_general(int n, int k, std::span<const double> ratios);
double bound_finite(int c, int n, int k, std::span<const double> ratios);

struct FreedmanGap {
  double gap = 0.0;       // 1 - (n)_k / n^k
  double df_bound = 0.0;  // k(k-1) / (2n)
  bool ok = false;        // decided in exact integer arithmetic
};

FreedmanGap freedman_gap(int n, int k);

struct Instance {
  int c;
  int n;
  WeightProfile lambda;
  SymmetricKernel g;
  std::uint64_t seed;
  TupleDistribution p;
};

Instance make_instance(WeightProfile lambda, SymmetricKernel g, std::uint64_t seed = 0);

/// lambda entries log-uniform in [r_min, 1] with one entry per row set to 1;
/// g(x) = exp(u) with u uniform in [0, 1) drawn once per type class.
Instance random_instance(std::uint64_t seed, int c, int n, double r_min);

struct BoundReport {
  std::uint64_t seed = 0;
  int c = 0;
  int n = 0;
  int k = 0;
  double tv_exact = 0.0;
  double bound_general = 0.0;
  double bound_finite = 0.0;
  double prod_r_k = 0.0;
  double prod_r_n = 0.0;
  bool pass_general = false;
  bool pass_finite = false;

  // Diagnostics from the proof chain.
  double urn_max_tv = 0.0;       // max over occupied urns of TV(P_{U,k}, Q_{U,k})
  double urn_max_bound = 0.0;    // max over occupied urns of the urn-level bound
  bool urn_reduction_ok = false; // tv_exact <= urn_max_tv
  bool estpq_ok = false;         // pointwise ratio inequality on every occupied urn
  bool mean_identity_ok = false; // sum_z (nu_j / n_j) P_{o,k}(z) = k / n
};

/// Decomposes an instance once and reports every k against it.
class Certifier {
 public:
  explicit Certifier(const Instance& instance);

  const UrnMixture& mixture() const { return mixture_; }
  /// Q_k = sum_U w_U Q_{U,k}.
  TupleDistribution approximant(int k) const;
  BoundReport report(int k) const;
  std::vector<BoundReport> report_all() const;

 private:
  Instance instance_;
  UrnMixture mixture_;
};

BoundReport verify_general(const Instance& instance, int k);
BoundReport verify_finite(const Instance& instance, int k);

struct SweepConfig {
  std::uint64_t master_seed = 1;
  int instances = 200;
  std::vector<int> alphabet_sizes{2, 3};
  int n_max = 7;
  std::vector<double> r_mins{1.0, 0.5, 0.2};
  /// Empty means every k in [1, n].
  std::vector<int> k_list;
};

struct SweepInstanceSpec {
  std::uint64_t seed;
  int c;
  int n;
  double r_min;
};

std::vector<SweepInstanceSpec> sweep_instances(const SweepConfig& config);

/// Reports for every instance and k, sorted by (seed, k).
std::vector<BoundReport> run_sweep(const SweepConfig& config);

/// Probability vectors on {0..c-1} with entries in multiples of 1/resolution.
std::vector<std::vector<double>> simplex_grid(int c, int resolution);
/// Empirical measures of the atoms of a mixture.
std::vector<std::vector<double>> urn_grid(const UrnMixture& mix);
/// Concatenation with near-duplicates (max-abs difference <= 1e-12) removed.
std::vector<std::vector<double>> merge_grids(const std::vector<std::vector<double>>& a,
                                             const std::vector<std::vector<double>>& b);

struct Projection {
  double value = 0.0;
  std::vector<double> weights;  // one per grid atom
};

/// min over mixture weights w of TV(P_k, sum_m w_m Pi_m), with Pi_m the
/// product law whose coordinate i is proportional to lambda_i * F_m.
Projection lp_project(const TupleDistribution& pk, const WeightProfile& lambda,
                      const std::vector<std::vector<double>>& grid);

}  // namespace exchkit
