#include "exchkit/scaled_real.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "exchkit/core.hpp"

namespace exchkit {

ScaledReal ScaledReal::from_parts(double mantissa, std::int64_t exponent) {
  if (!(mantissa >= 0.0) || !std::isfinite(mantissa)) {
    throw InputError("ScaledReal: value must be finite and nonnegative");
  }
  if (mantissa == 0.0) return ScaledReal();
  int e = 0;
  const double m = std::frexp(mantissa, &e);  // m in [0.5, 1)
  return ScaledReal(2.0 * m, exponent + e - 1);
}

ScaledReal ScaledReal::from_double(double value) { return from_parts(value, 0); }

ScaledReal ScaledReal::from_long_double(long double value) {
  if (!(value >= 0.0L) || !std::isfinite(value)) {
    throw InputError("ScaledReal: value must be finite and nonnegative");
  }
  if (value == 0.0L) return ScaledReal();
  int e = 0;
  const long double m = std::frexp(value, &e);
  return from_parts(static_cast<double>(2.0L * m), e - 1);
}

double ScaledReal::to_double() const {
  if (is_zero()) return 0.0;
  if (exponent_ > std::numeric_limits<double>::max_exponent) {
    return std::numeric_limits<double>::infinity();
  }
  if (exponent_ < std::numeric_limits<double>::min_exponent - 60) return 0.0;
  return std::ldexp(mantissa_, static_cast<int>(exponent_));
}

double ScaledReal::log2() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log2(mantissa_) + static_cast<double>(exponent_);
}

ScaledReal ScaledReal::operator*(const ScaledReal& other) const {
  if (is_zero() || other.is_zero()) return ScaledReal();
  return from_parts(mantissa_ * other.mantissa_, exponent_ + other.exponent_);
}

ScaledReal ScaledReal::operator/(const ScaledReal& other) const {
  if (other.is_zero()) throw InputError("ScaledReal: division by zero");
  if (is_zero()) return ScaledReal();
  return from_parts(mantissa_ / other.mantissa_, exponent_ - other.exponent_);
}

ScaledReal ScaledReal::operator+(const ScaledReal& other) const {
  if (is_zero()) return other;
  if (other.is_zero()) return *this;
  const ScaledReal& big = exponent_ >= other.exponent_ ? *this : other;
  const ScaledReal& small = exponent_ >= other.exponent_ ? other : *this;
  const std::int64_t shift = small.exponent_ - big.exponent_;
  if (shift < -80) return big;
  return from_parts(big.mantissa_ + std::ldexp(small.mantissa_, static_cast<int>(shift)),
                    big.exponent_);
}

std::partial_ordering operator<=>(const ScaledReal& a, const ScaledReal& b) {
  if (a.is_zero() || b.is_zero()) return a.mantissa_ <=> b.mantissa_;
  if (a.exponent_ != b.exponent_) return a.exponent_ <=> b.exponent_;
  return a.mantissa_ <=> b.mantissa_;
}

std::string to_string(const ScaledReal& value) {
  std::ostringstream os;
  os.precision(17);
  os << value.mantissa() << "*2^" << value.log2_scale();
  return os.str();
}

}  // namespace exchkit
