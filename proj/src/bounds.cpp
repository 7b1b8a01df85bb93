#include "exchkit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

#include "exchkit/extremal.hpp"
#include "exchkit/parallel.hpp"
#include "exchkit/rng.hpp"
#include "exchkit/simplex.hpp"

namespace exchkit {

namespace {

void check_nk(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw InputError("bounds need 1 <= k <= n");
}

double product_of(std::span<const double> ratios, std::size_t count) {
  if (ratios.size() < count) throw InputError("not enough ratios for the requested product");
  double prod = 1.0;
  for (std::size_t i = 0; i < count; ++i) {
    if (!(ratios[i] > 0.0) || ratios[i] > 1.0) throw InputError("ratios must lie in (0, 1]");
    prod *= ratios[i];
  }
  return prod;
}

}  // namespace

double bound_general(int n, int k, std::span<const double> ratios) {
  check_nk(n, k);
  const double prod = product_of(ratios, static_cast<std::size_t>(k));
  return static_cast<double>(k) * (k - 1) / (2.0 * n) / prod;
}

double bound_finite(int c, int n, int k, std::span<const double> ratios) {
  check_nk(n, k);
  if (c < 1) throw InputError("alphabet size must be at least 1");
  const double prod = product_of(ratios, static_cast<std::size_t>(n));
  return static_cast<double>(c) * k / n / (prod * prod);
}

FreedmanGap freedman_gap(int n, int k) {
  check_nk(n, k);
  using boost::multiprecision::cpp_int;
  FreedmanGap out;
  double falling = 1.0;
  for (int i = 0; i < k; ++i) falling *= static_cast<double>(n - i) / n;
  out.gap = 1.0 - falling;
  out.df_bound = static_cast<double>(k) * (k - 1) / (2.0 * n);

  // 2 (n^k - (n)_k) <= k (k-1) n^(k-1)
  cpp_int power = 1;
  cpp_int fall = 1;
  for (int i = 0; i < k; ++i) {
    power *= n;
    fall *= (n - i);
  }
  const cpp_int lhs = 2 * (power - fall);
  const cpp_int rhs = cpp_int(k) * (k - 1) * (power / n);
  out.ok = lhs <= rhs;
  return out;
}

Instance make_instance(WeightProfile lambda, SymmetricKernel g, std::uint64_t seed) {
  TupleDistribution p = build_model(lambda, g);
  const int c = g.c();
  const int n = g.n();
  return Instance{c, n, std::move(lambda), std::move(g), seed, std::move(p)};
}

Instance random_instance(std::uint64_t seed, int c, int n, double r_min) {
  if (!(r_min > 0.0) || r_min > 1.0) throw InputError("r_min must lie in (0, 1]");
  if (c < 1 || n < 1) throw InputError("random_instance: need c >= 1 and n >= 1");
  Rng rng(seed);
  const double log_r = std::log(r_min);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(static_cast<std::size_t>(c));
    for (double& v : row) v = std::exp(log_r * rng.uniform());
    row[rng.below(static_cast<std::uint64_t>(c))] = 1.0;
    rows.push_back(std::move(row));
  }

  // The sorted arrangement of a tuple has the smallest index in its type
  // class, so it is always visited before the others.
  const std::size_t cells = cell_count(c, n);
  std::vector<double> g(cells);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    std::vector<int> x = decode_tuple(idx, c, n);
    std::sort(x.begin(), x.end());
    const std::size_t canonical = encode_tuple(x, c);
    g[idx] = canonical == idx ? std::exp(rng.uniform()) : g[canonical];
  }
  return make_instance(WeightProfile::from_rows(rows), SymmetricKernel(c, n, std::move(g)), seed);
}

// ---------------------------------------------------------------------------

Certifier::Certifier(const Instance& instance)
    : instance_(instance), mixture_(decompose(instance.p, instance.lambda)) {}

TupleDistribution Certifier::approximant(int k) const {
  return weighted_iid_mixture(mixture_, instance_.lambda, k);
}

BoundReport Certifier::report(int k) const {
  const Instance& inst = instance_;
  check_nk(inst.n, k);
  const std::vector<double> r = inst.lambda.ratios();
  BoundReport rep;
  rep.seed = inst.seed;
  rep.c = inst.c;
  rep.n = inst.n;
  rep.k = k;
  rep.tv_exact = tv_distance(marginal(inst.p, k), approximant(k));
  rep.bound_general = bound_general(inst.n, k, r);
  rep.bound_finite = bound_finite(inst.c, inst.n, k, r);
  rep.prod_r_k = inst.lambda.ratio_product(k);
  rep.prod_r_n = inst.lambda.ratio_product(inst.n);
  rep.pass_general = rep.tv_exact <= rep.bound_general + kAbsTol;
  rep.pass_finite = rep.tv_exact <= rep.bound_finite + kAbsTol;

  const WeightProfile flat = WeightProfile::uniform(inst.n, inst.c);
  rep.estpq_ok = true;
  rep.mean_identity_ok = true;
  for (const auto& atom : mixture_.atoms()) {
    const UrnGap gap = tv_urn_gap(inst.lambda, atom.urn, k);
    rep.urn_max_tv = std::max(rep.urn_max_tv, gap.tv_exact);
    rep.urn_max_bound = std::max(rep.urn_max_bound, gap.bound_rhs);
    rep.estpq_ok = rep.estpq_ok && estPQ_check(inst.lambda, atom.urn, k);

    const TupleDistribution po = urn_conditional(flat, atom.urn, k);
    for (int j = 0; j < inst.c; ++j) {
      const int nj = atom.urn.count(j);
      if (nj == 0) continue;
      double mean = 0.0;
      for (std::size_t idx = 0; idx < po.size(); ++idx) {
        if (po[idx] == 0.0) continue;
        const std::vector<int> z = decode_tuple(idx, inst.c, k);
        const auto nu = std::count(z.begin(), z.end(), j);
        mean += static_cast<double>(nu) / nj * po[idx];
      }
      if (std::abs(mean - static_cast<double>(k) / inst.n) > kAbsTol) rep.mean_identity_ok = false;
    }
  }
  rep.urn_reduction_ok = rep.tv_exact <= rep.urn_max_tv + kAbsTol;
  return rep;
}

std::vector<BoundReport> Certifier::report_all() const {
  std::vector<BoundReport> out;
  for (int k = 1; k <= instance_.n; ++k) out.push_back(report(k));
  return out;
}

BoundReport verify_general(const Instance& instance, int k) { return Certifier(instance).report(k); }
BoundReport verify_finite(const Instance& instance, int k) { return Certifier(instance).report(k); }

std::vector<SweepInstanceSpec> sweep_instances(const SweepConfig& config) {
  if (config.instances < 0 || config.alphabet_sizes.empty() || config.r_mins.empty() || config.n_max < 1) {
    throw InputError("sweep configuration is empty");
  }
  std::vector<SweepInstanceSpec> out;
  const std::size_t cs = config.alphabet_sizes.size();
  const std::size_t rs = config.r_mins.size();
  for (int i = 0; i < config.instances; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out.push_back({derive_seed(config.master_seed, u), config.alphabet_sizes[u % cs],
                   1 + static_cast<int>((u / (cs * rs)) % static_cast<std::size_t>(config.n_max)),
                   config.r_mins[(u / cs) % rs]});
  }
  return out;
}

std::vector<BoundReport> run_sweep(const SweepConfig& config) {
  const std::vector<SweepInstanceSpec> specs = sweep_instances(config);
  std::vector<std::vector<BoundReport>> per(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) {
    const auto& s = specs[i];
    const Instance inst = random_instance(s.seed, s.c, s.n, s.r_min);
    const Certifier cert(inst);
    if (config.k_list.empty()) {
      per[i] = cert.report_all();
    } else {
      for (int k : config.k_list) {
        if (k >= 1 && k <= inst.n) per[i].push_back(cert.report(k));
      }
    }
  });
  std::vector<BoundReport> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end(), [](const BoundReport& a, const BoundReport& b) {
    return std::tie(a.seed, a.k) < std::tie(b.seed, b.k);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Projection onto the weighted i.i.d. hull

std::vector<std::vector<double>> simplex_grid(int c, int resolution) {
  if (c < 1 || resolution < 1) throw InputError("simplex_grid: need c >= 1 and resolution >= 1");
  std::vector<std::vector<double>> out;
  std::vector<int> parts(static_cast<std::size_t>(c), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == c - 1) {
      parts[static_cast<std::size_t>(pos)] = left;
      std::vector<double> f(static_cast<std::size_t>(c));
      for (int v = 0; v < c; ++v) f[static_cast<std::size_t>(v)] = static_cast<double>(parts[static_cast<std::size_t>(v)]) / resolution;
      out.push_back(std::move(f));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      parts[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, resolution);
  return out;
}

std::vector<std::vector<double>> urn_grid(const UrnMixture& mix) {
  std::vector<std::vector<double>> out;
  for (const auto& atom : mix.atoms()) out.push_back(atom.urn.empirical());
  return out;
}

std::vector<std::vector<double>> merge_grids(const std::vector<std::vector<double>>& a,
                                             const std::vector<std::vector<double>>& b) {
  std::vector<std::vector<double>> out;
  auto push = [&](const std::vector<double>& f) {
    for (const auto& g : out) {
      double diff = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) diff = std::max(diff, std::abs(f[i] - g[i]));
      if (diff <= 1e-12) return;
    }
    out.push_back(f);
  };
  for (const auto& f : a) push(f);
  for (const auto& f : b) push(f);
  return out;
}

Projection lp_project(const TupleDistribution& pk, const WeightProfile& lambda,
                      const std::vector<std::vector<double>>& grid) {
  if (grid.empty()) throw InputError("lp_project: empty grid");
  const int k = pk.k();
  const int c = pk.c();
  if (lambda.n() < k || lambda.c() != c) throw InputError("lp_project: weight profile does not cover P_k");

  std::vector<TupleDistribution> atoms;
  atoms.reserve(grid.size());
  for (const auto& f : grid) {
    if (static_cast<int>(f.size()) != c) throw InputError("lp_project: grid atom has the wrong size");
    double mass = 0.0;
    for (double v : f) {
      if (v < 0.0) throw InputError("lp_project: grid atoms must be probability vectors");
      mass += v;
    }
    if (std::abs(mass - 1.0) > 1e-9) throw InputError("lp_project: grid atoms must be probability vectors");
    std::vector<std::vector<double>> factors;
    for (int i = 0; i < k; ++i) {
      std::vector<double> t(static_cast<std::size_t>(c));
      double s = 0.0;
      for (int v = 0; v < c; ++v) {
        t[static_cast<std::size_t>(v)] = lambda[i][v] * f[static_cast<std::size_t>(v)];
        s += t[static_cast<std::size_t>(v)];
      }
      for (double& e : t) e /= s;
      factors.push_back(std::move(t));
    }
    atoms.push_back(product_distribution(factors));
  }

  // Variables: [w_1..w_M, u_1..u_C, v_1..v_C]; rows: one per cell, then sum w = 1.
  const std::size_t m = atoms.size();
  const std::size_t cells = pk.size();
  LinearProgram lp;
  lp.cost.assign(m + 2 * cells, 0.0);
  for (std::size_t z = 0; z < 2 * cells; ++z) lp.cost[m + z] = 0.5;
  for (std::size_t z = 0; z < cells; ++z) {
    std::vector<double> row(lp.cost.size(), 0.0);
    for (std::size_t a = 0; a < m; ++a) row[a] = atoms[a][z];
    row[m + z] = 1.0;
    row[m + cells + z] = -1.0;
    lp.a_eq.push_back(std::move(row));
    lp.b_eq.push_back(pk[z]);
  }
  std::vector<double> simplex_row(lp.cost.size(), 0.0);
  for (std::size_t a = 0; a < m; ++a) simplex_row[a] = 1.0;
  lp.a_eq.push_back(std::move(simplex_row));
  lp.b_eq.push_back(1.0);

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) {
    throw FalsificationError("lp_project: simplex did not reach an optimum on a feasible problem");
  }
  Projection out;
  out.weights.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(m));
  // Report the TV of the returned mixture itself rather than the LP objective.
  std::vector<double> mix(cells, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t z = 0; z < cells; ++z) mix[z] += out.weights[a] * atoms[a][z];
  }
  double l1 = 0.0;
  for (std::size_t z = 0; z < cells; ++z) l1 += std::abs(pk[z] - mix[z]);
  out.value = 0.5 * l1;
  return out;
}

}  // namespace exchkit
