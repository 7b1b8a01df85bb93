#pragma once

// Finite-alphabet domain types for weighted exchangeable sequences.
//
// Tuples (x_1, ..., x_k) over the alphabet {0, ..., c-1} are stored densely
// and indexed by their base-c encoding with x_1 as the most significant
// digit, so index = x_1 * c^(k-1) + ... + x_k.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace exchkit {

/// Raised on malformed input: bad shapes, nonpositive weights, guard overruns.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical check that the theory predicts fails.
class FalsificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kRelTol = 1e-8;
inline constexpr double kAbsTol = 1e-10;
inline constexpr double kMassTol = 1e-10;
inline constexpr double kNegativeTol = 1e-12;
inline constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 24;

/// |a - b| <= abs_tol + rel_tol * max(|a|, |b|).
bool nearly_equal(double a, double b, double rel_tol = kRelTol,
                  double abs_tol = kAbsTol);

/// c^k, throwing InputError when it exceeds the dense-storage guard.
std::size_t cell_count(int c, int k);

std::size_t encode_tuple(std::span<const int> x, int c);
std::vector<int> decode_tuple(std::size_t index, int c, int k);

struct FiniteSpace {
  int c = 1;

  explicit FiniteSpace(int size);
};

class WeightFunction {
 public:
  explicit WeightFunction(std::vector<double> values);

  static WeightFunction constant(int c, double value = 1.0);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int x) const { return values_[static_cast<std::size_t>(x)]; }
  const std::vector<double>& values() const { return values_; }

  double min() const;
  double max() const;
  /// min / max, in (0, 1].
  double ratio() const { return min() / max(); }

 private:
  std::vector<double> values_;
};

double ratio(const WeightFunction& w);

class WeightProfile {
 public:
  explicit WeightProfile(std::vector<WeightFunction> entries);
  WeightProfile(std::initializer_list<std::vector<double>> rows);

  static WeightProfile uniform(int n, int c);
  static WeightProfile from_rows(const std::vector<std::vector<double>>& rows);

  int n() const { return static_cast<int>(entries_.size()); }
  int c() const { return entries_.front().size(); }
  const WeightFunction& operator[](int i) const {
    return entries_[static_cast<std::size_t>(i)];
  }
  const std::vector<WeightFunction>& entries() const { return entries_; }

  std::vector<double> ratios() const;
  /// Product of the first k ratios r_1 ... r_k.
  double ratio_product(int k) const;
  /// Leading k weight functions.
  WeightProfile prefix(int k) const;
  bool is_constant() const;

 private:
  std::vector<WeightFunction> entries_;
};

/// A strictly positive, permutation-symmetric array over X^n.
class SymmetricKernel {
 public:
  SymmetricKernel(int c, int n, std::vector<double> values);

  static SymmetricKernel constant(int c, int n);

  int c() const { return c_; }
  int n() const { return n_; }
  const std::vector<double>& values() const { return values_; }

 private:
  int c_;
  int n_;
  std::vector<double> values_;
};

class TupleDistribution {
 public:
  /// Validates: negatives below -1e-12 are rejected, smaller ones are
  /// clamped to zero and the vector renormalized; the mass must be 1 within
  /// 1e-10.
  TupleDistribution(int k, int c, std::vector<double> probs);

  /// Normalizes nonnegative weights to unit mass.
  static TupleDistribution from_weights(int k, int c, std::vector<double> weights);
  static TupleDistribution point_mass(int c, std::span<const int> x);

  int k() const { return k_; }
  int c() const { return c_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t index) const { return probs_[index]; }
  double at(std::span<const int> x) const { return probs_[encode_tuple(x, c_)]; }
  const std::vector<double>& probs() const { return probs_; }

 private:
  int k_;
  int c_;
  std::vector<double> probs_;
};

/// Multiset of n alphabet points, stored as multiplicities per point.
class Urn {
 public:
  explicit Urn(std::vector<int> counts);

  static Urn of_tuple(std::span<const int> x, int c);

  int c() const { return static_cast<int>(counts_.size()); }
  int n() const { return n_; }
  int count(int x) const { return counts_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& counts() const { return counts_; }

  /// Values of the n slots in ascending order, repeated by multiplicity.
  std::vector<int> slots() const;
  /// counts / n.
  std::vector<double> empirical() const;

  friend bool operator==(const Urn&, const Urn&) = default;
  friend auto operator<=>(const Urn&, const Urn&) = default;

 private:
  std::vector<int> counts_;
  int n_;
};

std::string to_string(const Urn& urn);

double tv_distance(const TupleDistribution& p, const TupleDistribution& q);

/// f(x) proportional to prod_i lambda_i(x_i) * g(x).
TupleDistribution build_model(const WeightProfile& lambda, const SymmetricKernel& g);

/// A point x and an adjacent transposition (position, position + 1) under
/// which x -> f(x) / prod_i lambda_i(x_i) is not invariant.
struct SymmetryViolation {
  std::size_t index;
  std::vector<int> tuple;
  int position;
  double value;
  double swapped_value;
};

std::optional<SymmetryViolation> find_symmetry_violation(
    std::span<const double> f, int c, int n, const WeightProfile& lambda,
    double rel_tol = kRelTol);

bool is_weighted_exchangeable(const TupleDistribution& f,
                              const WeightProfile& lambda,
                              double rel_tol = kRelTol);

/// (theta_i * lambda_i); requires prod theta_i = 1.
WeightProfile rescale_weights(const WeightProfile& lambda, std::span<const double> theta);

/// Law of the first k coordinates.
TupleDistribution marginal(const TupleDistribution& p, int k);

/// Product law of independent coordinates; factors[i] is a probability vector.
TupleDistribution product_distribution(const std::vector<std::vector<double>>& factors);

}  // namespace exchkit
