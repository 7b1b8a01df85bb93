#include "exchkit/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace exchkit {

WeightMatrix::WeightMatrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows < 0 || cols < 0) throw InputError("matrix dimensions must be nonnegative");
  if (entries_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw InputError("matrix entry count does not match its shape");
  }
  for (double v : entries_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("matrix entries must be strictly positive");
  }
}

WeightMatrix WeightMatrix::from_urn(const WeightProfile& lambda, const Urn& urn) {
  if (lambda.c() != urn.c()) throw InputError("urn and weight profile use different alphabets");
  const std::vector<int> slots = urn.slots();
  const int n = lambda.n();
  const int m = static_cast<int>(slots.size());
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(n) * slots.size());
  for (int i = 0; i < n; ++i) {
    for (int x : slots) entries.push_back(lambda[i][x]);
  }
  return WeightMatrix(n, m, std::move(entries));
}

WeightMatrix WeightMatrix::constant(int n, double value) {
  return WeightMatrix(n, n, std::vector<double>(static_cast<std::size_t>(n) * n, value));
}

WeightMatrix WeightMatrix::scale_row(int i, double factor) const {
  std::vector<double> e = entries_;
  for (int j = 0; j < cols_; ++j) e[static_cast<std::size_t>(i * cols_ + j)] *= factor;
  return WeightMatrix(rows_, cols_, std::move(e));
}

WeightMatrix WeightMatrix::permute_columns(std::span<const int> order) const {
  if (static_cast<int>(order.size()) != cols_) throw InputError("column order has the wrong length");
  std::vector<double> e(entries_.size());
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      e[static_cast<std::size_t>(i * cols_ + j)] = (*this)(i, order[static_cast<std::size_t>(j)]);
    }
  }
  return WeightMatrix(rows_, cols_, std::move(e));
}

ScaledReal permanent_naive(const WeightMatrix& m) {
  if (!m.square()) throw InputError("permanent of a non-square matrix");
  const int n = m.rows();
  if (n > kMaxNaiveOrder) throw InputError("permanent_naive is limited to n <= 10");
  if (n == 0) return ScaledReal::from_double(1.0);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  long double total = 0.0L;
  do {
    long double prod = 1.0L;
    for (int i = 0; i < n; ++i) prod *= m(i, perm[static_cast<std::size_t>(i)]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return ScaledReal::from_long_double(total);
}

namespace {

// Kahan-Babuska compensated sum.
class CompensatedSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

// Scales rows and columns toward unit sums by powers of two, in long double so
// that wide dynamic ranges neither underflow nor pick up rounding. Returns the
// balanced entries and the base-2 log of the applied factor:
// perm(m) = perm(balanced) * 2^-log2_factor.
std::pair<std::vector<long double>, std::int64_t> balance(const WeightMatrix& m) {
  const int n = m.rows();
  std::vector<long double> b(m.entries().begin(), m.entries().end());
  std::int64_t log2_factor = 0;
  auto at = [&](int i, int j) -> long double& { return b[static_cast<std::size_t>(i * n + j)]; };
  auto scale_exponent = [](long double s) { return -static_cast<int>(std::ilogb(s)); };

  // Rows to max in [1, 2) first so the sums below cannot overflow.
  for (int i = 0; i < n; ++i) {
    long double mx = 0.0L;
    for (int j = 0; j < n; ++j) mx = std::max(mx, at(i, j));
    const int e = scale_exponent(mx);
    for (int j = 0; j < n; ++j) at(i, j) = std::ldexp(at(i, j), e);
    log2_factor += e;
  }
  constexpr int kRounds = 1000;
  for (int round = 0; round < kRounds; ++round) {
    bool changed = false;
    for (int j = 0; j < n; ++j) {
      long double s = 0.0L;
      for (int i = 0; i < n; ++i) s += at(i, j);
      const int e = scale_exponent(s);
      if (e == 0) continue;
      changed = true;
      for (int i = 0; i < n; ++i) at(i, j) = std::ldexp(at(i, j), e);
      log2_factor += e;
    }
    for (int i = 0; i < n; ++i) {
      long double s = 0.0L;
      for (int j = 0; j < n; ++j) s += at(i, j);
      const int e = scale_exponent(s);
      if (e == 0) continue;
      changed = true;
      for (int j = 0; j < n; ++j) at(i, j) = std::ldexp(at(i, j), e);
      log2_factor += e;
    }
    if (!changed) break;
  }
  return {std::move(b), log2_factor};
}

}  // namespace

ScaledReal permanent_ryser(const WeightMatrix& m) {
  if (!m.square()) throw InputError("permanent of a non-square matrix");
  const int n = m.rows();
  if (n > kMaxRyserOrder) throw InputError("permanent_ryser is limited to n <= 24");
  if (n == 0) return ScaledReal::from_double(1.0);

  auto [b, log2_factor] = balance(m);
  std::vector<long double> row_sum(static_cast<std::size_t>(n), 0.0L);
  CompensatedSum acc;
  int subset_size = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < subsets; ++g) {
    const int j = std::countr_zero(g);
    const std::uint64_t gray = g ^ (g >> 1);
    const bool added = (gray >> j) & 1U;
    subset_size += added ? 1 : -1;
    for (int i = 0; i < n; ++i) {
      const long double v = b[static_cast<std::size_t>(i * n + j)];
      row_sum[static_cast<std::size_t>(i)] += added ? v : -v;
    }
    long double prod = 1.0L;
    for (int i = 0; i < n; ++i) prod *= row_sum[static_cast<std::size_t>(i)];
    acc.add(((n - subset_size) % 2 == 0) ? prod : -prod);
  }
  const long double value = acc.value();
  if (!(value > 0.0L)) {
    throw FalsificationError("permanent_ryser: cancellation produced a nonpositive permanent");
  }
  return ScaledReal::from_long_double(value) * ScaledReal::from_parts(1.0, -log2_factor);
}

ScaledReal permanent_minor(const WeightMatrix& m, std::span<const int> drop_rows,
                           std::span<const int> drop_cols) {
  if (drop_rows.size() != drop_cols.size()) {
    throw InputError("permanent_minor: must drop as many rows as columns");
  }
  auto keep = [](int count, std::span<const int> drop) {
    std::vector<bool> dropped(static_cast<std::size_t>(count), false);
    for (int d : drop) {
      if (d < 0 || d >= count || dropped[static_cast<std::size_t>(d)]) {
        throw InputError("permanent_minor: bad or repeated index");
      }
      dropped[static_cast<std::size_t>(d)] = true;
    }
    std::vector<int> out;
    for (int i = 0; i < count; ++i) {
      if (!dropped[static_cast<std::size_t>(i)]) out.push_back(i);
    }
    return out;
  };
  const std::vector<int> rows = keep(m.rows(), drop_rows);
  const std::vector<int> cols = keep(m.cols(), drop_cols);
  if (rows.size() != cols.size()) throw InputError("permanent_minor: remaining block is not square");
  if (rows.empty()) return ScaledReal::from_double(1.0);
  std::vector<double> sub;
  sub.reserve(rows.size() * cols.size());
  for (int i : rows) {
    for (int j : cols) sub.push_back(m(i, j));
  }
  const int k = static_cast<int>(rows.size());
  return permanent_ryser(WeightMatrix(k, k, std::move(sub)));
}

MinorTable::MinorTable(const WeightMatrix& m) : n_(m.rows()) {
  if (!m.square()) throw InputError("MinorTable needs a square matrix");
  if (n_ > kMaxMinorTableOrder) throw InputError("MinorTable is limited to n <= 20");
  const std::size_t n = static_cast<std::size_t>(n_);
  scaled_ = m.entries();
  row_log2_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double mx = 0.0;
    for (std::size_t j = 0; j < n; ++j) mx = std::max(mx, scaled_[i * n + j]);
    int e = 0;
    std::frexp(mx, &e);  // exact power-of-two scaling keeps entries exact
    for (std::size_t j = 0; j < n; ++j) scaled_[i * n + j] = std::ldexp(scaled_[i * n + j], -e);
    row_log2_[i] = e;
  }
  const std::uint32_t full = (n_ == 0) ? 0U : static_cast<std::uint32_t>((std::uint64_t{1} << n_) - 1);
  table_.assign(static_cast<std::size_t>(full) + 1, 0.0);
  table_[full] = 1.0;
  for (std::uint32_t mask = full; mask-- > 0;) {
    const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!((mask >> j) & 1U)) s += scaled_[row * n + j] * table_[mask | (1U << j)];
    }
    table_[mask] = s;
  }
}

ScaledReal MinorTable::minor(std::uint32_t mask) const {
  if (mask >= table_.size()) throw InputError("MinorTable: mask out of range");
  double log_scale = 0.0;
  for (int i = std::popcount(mask); i < n_; ++i) log_scale += row_log2_[static_cast<std::size_t>(i)];
  return ScaledReal::from_parts(table_[mask], static_cast<std::int64_t>(log_scale));
}

double MinorTable::transition(std::uint32_t mask, int col) const {
  const std::size_t n = static_cast<std::size_t>(n_);
  const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
  if ((mask >> col) & 1U) return 0.0;
  return scaled_[row * n + static_cast<std::size_t>(col)] * table_[mask | (1U << col)] / table_[mask];
}

}  // namespace exchkit
