#include "exchkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace exchkit {

bool nearly_equal(double a, double b, double rel_tol, double abs_tol) {
  return std::abs(a - b) <= abs_tol + rel_tol * std::max(std::abs(a), std::abs(b));
}

std::size_t cell_count(int c, int k) {
  if (c < 1) throw InputError("alphabet size must be at least 1");
  if (k < 0) throw InputError("tuple length must be nonnegative");
  std::uint64_t cells = 1;
  for (int i = 0; i < k; ++i) {
    cells *= static_cast<std::uint64_t>(c);
    if (cells > kMaxCells) {
      throw InputError("dense storage guard exceeded: " + std::to_string(c) + "^" +
                       std::to_string(k) + " > 2^24 cells");
    }
  }
  return static_cast<std::size_t>(cells);
}

std::size_t encode_tuple(std::span<const int> x, int c) {
  std::size_t index = 0;
  for (int v : x) {
    if (v < 0 || v >= c) throw InputError("tuple entry outside the alphabet");
    index = index * static_cast<std::size_t>(c) + static_cast<std::size_t>(v);
  }
  return index;
}

std::vector<int> decode_tuple(std::size_t index, int c, int k) {
  std::vector<int> x(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    x[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(c));
    index /= static_cast<std::size_t>(c);
  }
  return x;
}

FiniteSpace::FiniteSpace(int size) : c(size) {
  if (size < 1) throw InputError("alphabet size must be at least 1");
}

// ---------------------------------------------------------------------------
// Weights

WeightFunction::WeightFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("weight function needs at least one value");
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InputError("weight function entries must be finite and strictly positive");
    }
  }
}

WeightFunction WeightFunction::constant(int c, double value) {
  return WeightFunction(std::vector<double>(static_cast<std::size_t>(c), value));
}

double WeightFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double WeightFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ratio(const WeightFunction& w) { return w.ratio(); }

WeightProfile::WeightProfile(std::vector<WeightFunction> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InputError("weight profile needs at least one weight function");
  const int c = entries_.front().size();
  for (const auto& w : entries_) {
    if (w.size() != c) throw InputError("weight functions disagree on the alphabet size");
  }
}

WeightProfile::WeightProfile(std::initializer_list<std::vector<double>> rows)
    : WeightProfile(from_rows(std::vector<std::vector<double>>(rows))) {}

WeightProfile WeightProfile::uniform(int n, int c) {
  if (n < 1) throw InputError("weight profile needs n >= 1");
  return WeightProfile(std::vector<WeightFunction>(static_cast<std::size_t>(n),
                                                   WeightFunction::constant(c)));
}

WeightProfile WeightProfile::from_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<WeightFunction> entries;
  entries.reserve(rows.size());
  for (const auto& row : rows) entries.emplace_back(row);
  return WeightProfile(std::move(entries));
}

std::vector<double> WeightProfile::ratios() const {
  std::vector<double> r;
  r.reserve(entries_.size());
  for (const auto& w : entries_) r.push_back(w.ratio());
  return r;
}

double WeightProfile::ratio_product(int k) const {
  if (k < 0 || k > n()) throw InputError("ratio_product: k outside [0, n]");
  double prod = 1.0;
  for (int i = 0; i < k; ++i) prod *= entries_[static_cast<std::size_t>(i)].ratio();
  return prod;
}

WeightProfile WeightProfile::prefix(int k) const {
  if (k < 1 || k > n()) throw InputError("prefix: k outside [1, n]");
  return WeightProfile(std::vector<WeightFunction>(entries_.begin(), entries_.begin() + k));
}

bool WeightProfile::is_constant() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const WeightFunction& w) { return w.min() == w.max(); });
}

// ---------------------------------------------------------------------------
// Kernels and distributions

SymmetricKernel::SymmetricKernel(int c, int n, std::vector<double> values)
    : c_(c), n_(n), values_(std::move(values)) {
  if (n < 1) throw InputError("kernel needs n >= 1");
  if (values_.size() != cell_count(c, n)) throw InputError("kernel size must be c^n");
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("kernel entries must be strictly positive");
  }
  if (auto bad = find_symmetry_violation(values_, c, n, WeightProfile::uniform(n, c))) {
    throw InputError("kernel is not symmetric: swapping positions " +
                     std::to_string(bad->position + 1) + " and " +
                     std::to_string(bad->position + 2) + " changes the value");
  }
}

SymmetricKernel SymmetricKernel::constant(int c, int n) {
  return SymmetricKernel(c, n, std::vector<double>(cell_count(c, n), 1.0));
}

TupleDistribution::TupleDistribution(int k, int c, std::vector<double> probs)
    : k_(k), c_(c), probs_(std::move(probs)) {
  if (k < 0) throw InputError("tuple length must be nonnegative");
  if (probs_.size() != cell_count(c, k)) throw InputError("distribution size must be c^k");
  bool clamped = false;
  for (double& p : probs_) {
    if (!std::isfinite(p)) throw InputError("distribution entries must be finite");
    if (p < -kNegativeTol) throw InputError("distribution has a negative entry");
    if (p < 0.0) {
      p = 0.0;
      clamped = true;
    }
  }
  double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > kMassTol) {
    throw InputError("distribution mass " + std::to_string(total) + " differs from 1");
  }
  if (clamped) {
    for (double& p : probs_) p /= total;
  }
}

TupleDistribution TupleDistribution::from_weights(int k, int c, std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w)) throw InputError("weights must be finite and nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw InputError("weights have zero total mass");
  for (double& w : weights) w /= total;
  return TupleDistribution(k, c, std::move(weights));
}

TupleDistribution TupleDistribution::point_mass(int c, std::span<const int> x) {
  std::vector<double> probs(cell_count(c, static_cast<int>(x.size())), 0.0);
  probs[encode_tuple(x, c)] = 1.0;
  return TupleDistribution(static_cast<int>(x.size()), c, std::move(probs));
}

Urn::Urn(std::vector<int> counts) : counts_(std::move(counts)), n_(0) {
  if (counts_.empty()) throw InputError("urn needs an alphabet of size >= 1");
  for (int v : counts_) {
    if (v < 0) throw InputError("urn counts must be nonnegative");
    n_ += v;
  }
  if (n_ < 1) throw InputError("urn must hold at least one point");
}

Urn Urn::of_tuple(std::span<const int> x, int c) {
  std::vector<int> counts(static_cast<std::size_t>(c), 0);
  for (int v : x) {
    if (v < 0 || v >= c) throw InputError("tuple entry outside the alphabet");
    ++counts[static_cast<std::size_t>(v)];
  }
  return Urn(std::move(counts));
}

std::vector<int> Urn::slots() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (int x = 0; x < c(); ++x) out.insert(out.end(), static_cast<std::size_t>(count(x)), x);
  return out;
}

std::vector<double> Urn::empirical() const {
  std::vector<double> out(counts_.size());
  for (std::size_t x = 0; x < counts_.size(); ++x) out[x] = static_cast<double>(counts_[x]) / n_;
  return out;
}

std::string to_string(const Urn& urn) {
  std::ostringstream os;
  os << '(';
  for (int x = 0; x < urn.c(); ++x) os << (x ? "," : "") << urn.count(x);
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// Operations

double tv_distance(const TupleDistribution& p, const TupleDistribution& q) {
  if (p.k() != q.k() || p.c() != q.c()) throw InputError("tv_distance: shape mismatch");
  double l1 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) l1 += std::abs(p[i] - q[i]);
  return std::min(1.0, 0.5 * l1);
}

namespace {

// prod_i lambda_i(x_i) for every x in X^n, in index order.
std::vector<double> tilt_products(const WeightProfile& lambda, int n) {
  const int c = lambda.c();
  std::vector<double> out(cell_count(c, n));
  std::vector<int> x(static_cast<std::size_t>(n), 0);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= lambda[i][x[static_cast<std::size_t>(i)]];
    out[idx] = prod;
    for (int i = n - 1; i >= 0; --i) {
      if (++x[static_cast<std::size_t>(i)] < c) break;
      x[static_cast<std::size_t>(i)] = 0;
    }
  }
  return out;
}

}  // namespace

TupleDistribution build_model(const WeightProfile& lambda, const SymmetricKernel& g) {
  if (lambda.n() != g.n() || lambda.c() != g.c()) {
    throw InputError("build_model: weight profile and kernel shapes differ");
  }
  std::vector<double> f = tilt_products(lambda, g.n());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= g.values()[i];
  return TupleDistribution::from_weights(g.n(), g.c(), std::move(f));
}

std::optional<SymmetryViolation> find_symmetry_violation(std::span<const double> f, int c,
                                                         int n, const WeightProfile& lambda,
                                                         double rel_tol) {
  if (lambda.n() < n || lambda.c() != c) {
    throw InputError("symmetry check: weight profile does not cover the tuple shape");
  }
  if (f.size() != cell_count(c, n)) throw InputError("symmetry check: size must be c^n");
  std::vector<double> h = tilt_products(lambda, n);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = f[i] / h[i];

  std::vector<std::size_t> place(static_cast<std::size_t>(n));
  place[static_cast<std::size_t>(n - 1)] = 1;
  for (int i = n - 2; i >= 0; --i) {
    place[static_cast<std::size_t>(i)] = place[static_cast<std::size_t>(i + 1)] * static_cast<std::size_t>(c);
  }
  std::vector<int> x(static_cast<std::size_t>(n), 0);
  for (std::size_t idx = 0; idx < h.size(); ++idx) {
    for (int p = 0; p + 1 < n; ++p) {
      const int a = x[static_cast<std::size_t>(p)];
      const int b = x[static_cast<std::size_t>(p + 1)];
      if (a >= b) continue;  // visit each unordered pair once
      const std::size_t swapped = idx + static_cast<std::size_t>(b - a) * place[static_cast<std::size_t>(p)] -
                                  static_cast<std::size_t>(b - a) * place[static_cast<std::size_t>(p + 1)];
      if (!nearly_equal(h[idx], h[swapped], rel_tol, kAbsTol)) {
        return SymmetryViolation{idx, x, p, h[idx], h[swapped]};
      }
    }
    for (int i = n - 1; i >= 0; --i) {
      if (++x[static_cast<std::size_t>(i)] < c) break;
      x[static_cast<std::size_t>(i)] = 0;
    }
  }
  return std::nullopt;
}

bool is_weighted_exchangeable(const TupleDistribution& f, const WeightProfile& lambda,
                              double rel_tol) {
  return !find_symmetry_violation(f.probs(), f.c(), f.k(), lambda, rel_tol).has_value();
}

WeightProfile rescale_weights(const WeightProfile& lambda, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != lambda.n()) {
    throw InputError("rescale_weights: need one factor per weight function");
  }
  double prod = 1.0;
  for (double t : theta) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InputError("rescale_weights: factors must be positive");
    prod *= t;
  }
  if (!nearly_equal(prod, 1.0, kRelTol, 0.0)) {
    throw InputError("rescale_weights: factors must multiply to 1");
  }
  std::vector<WeightFunction> out;
  out.reserve(theta.size());
  for (int i = 0; i < lambda.n(); ++i) {
    std::vector<double> v = lambda[i].values();
    for (double& e : v) e *= theta[static_cast<std::size_t>(i)];
    out.emplace_back(std::move(v));
  }
  return WeightProfile(std::move(out));
}

TupleDistribution marginal(const TupleDistribution& p, int k) {
  if (k < 1 || k > p.k()) throw InputError("marginal: k outside [1, n]");
  const std::size_t out_cells = cell_count(p.c(), k);
  const std::size_t block = p.size() / out_cells;
  std::vector<double> out(out_cells, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) out[i / block] += p[i];
  return TupleDistribution(k, p.c(), std::move(out));
}

TupleDistribution product_distribution(const std::vector<std::vector<double>>& factors) {
  if (factors.empty()) throw InputError("product_distribution: need at least one factor");
  const int c = static_cast<int>(factors.front().size());
  const int k = static_cast<int>(factors.size());
  for (const auto& f : factors) {
    if (static_cast<int>(f.size()) != c) throw InputError("product_distribution: factors must share one alphabet");
  }
  std::vector<double> probs(cell_count(c, k));
  std::vector<int> x(static_cast<std::size_t>(k), 0);
  for (std::size_t idx = 0; idx < probs.size(); ++idx) {
    double prod = 1.0;
    for (int i = 0; i < k; ++i) prod *= factors[static_cast<std::size_t>(i)][static_cast<std::size_t>(x[static_cast<std::size_t>(i)])];
    probs[idx] = prod;
    for (int i = k - 1; i >= 0; --i) {
      if (++x[static_cast<std::size_t>(i)] < c) break;
      x[static_cast<std::size_t>(i)] = 0;
    }
  }
  return TupleDistribution(k, c, std::move(probs));
}

}  // namespace exchkit
