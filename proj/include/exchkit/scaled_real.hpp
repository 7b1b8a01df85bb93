#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace exchkit {

/// Nonnegative real stored as mantissa * 2^exponent with mantissa in [1, 2)
/// (or exactly 0), so products of many permanent-sized factors never
/// overflow or underflow.
class ScaledReal {
 public:
  ScaledReal() = default;

  static ScaledReal from_double(double value);
  /// mantissa * 2^exponent for any finite nonnegative mantissa.
  static ScaledReal from_parts(double mantissa, std::int64_t exponent);
  static ScaledReal from_long_double(long double value);

  double mantissa() const { return mantissa_; }
  std::int64_t log2_scale() const { return exponent_; }
  bool is_zero() const { return mantissa_ == 0.0; }

  /// Nearest double; saturates to +inf or 0 outside the double range.
  double to_double() const;
  double log2() const;

  ScaledReal operator*(const ScaledReal& other) const;
  ScaledReal operator/(const ScaledReal& other) const;
  ScaledReal operator+(const ScaledReal& other) const;
  ScaledReal& operator*=(const ScaledReal& other) { return *this = *this * other; }
  ScaledReal& operator+=(const ScaledReal& other) { return *this = *this + other; }

  /// this / other as a plain double.
  double ratio(const ScaledReal& other) const { return (*this / other).to_double(); }

  friend bool operator==(const ScaledReal&, const ScaledReal&) = default;
  friend std::partial_ordering operator<=>(const ScaledReal& a, const ScaledReal& b);

 private:
  ScaledReal(double mantissa, std::int64_t exponent) : mantissa_(mantissa), exponent_(exponent) {}

  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

std::string to_string(const ScaledReal& value);

}  // namespace exchkit
