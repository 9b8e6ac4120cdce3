#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "casimir/errors.hpp"

namespace casimir {

/// A real number held as sign * exp(log_mag).
///
/// Riccati-Bessel factors such as exp(+-nu*eta) leave the double range long
/// before the quantities built from them do, so every product and quotient is
/// carried with an unbounded exponent and only final ratios are brought back
/// to double. Internally the magnitude is mantissa * 2^exponent with the
/// mantissa in [0.5, 1), so from_double/to_double round-trip exactly.
class ScaledValue {
 public:
  constexpr ScaledValue() = default;

  /// log_mag = -inf gives zero. Throws DomainError for NaN or +inf.
  static ScaledValue from_log(int sign, double log_mag) {
    if (sign == 0 || log_mag == -std::numeric_limits<double>::infinity()) return {};
    if (!std::isfinite(log_mag)) throw DomainError("ScaledValue: log magnitude must be finite");
    const double e = std::floor(log_mag / kLn2);
    ScaledValue v;
    v.sign_ = sign > 0 ? 1 : -1;
    v.set_magnitude(std::exp(log_mag - e * kLn2), static_cast<std::int64_t>(e));
    return v;
  }

  static ScaledValue from_double(double value) {
    if (value == 0.0) return {};
    ScaledValue v;
    v.sign_ = value > 0.0 ? 1 : -1;
    v.set_magnitude(std::fabs(value), 0);
    return v;
  }

  int sign() const { return sign_; }
  /// -inf for zero.
  double log_mag() const {
    if (sign_ == 0) return -std::numeric_limits<double>::infinity();
    return std::log(mantissa_) + static_cast<double>(exponent_) * kLn2;
  }
  bool is_zero() const { return sign_ == 0; }

  /// May overflow to +-inf or underflow to zero; that is the caller's choice.
  double to_double() const {
    if (sign_ == 0) return 0.0;
    if (exponent_ > 2000) return sign_ * std::numeric_limits<double>::infinity();
    if (exponent_ < -2000) return sign_ * 0.0;
    return sign_ * std::ldexp(mantissa_, static_cast<int>(exponent_));
  }

  ScaledValue operator-() const {
    ScaledValue v = *this;
    v.sign_ = -sign_;
    return v;
  }

  friend ScaledValue operator*(ScaledValue lhs, ScaledValue rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return {};
    ScaledValue v;
    v.sign_ = lhs.sign_ * rhs.sign_;
    v.set_magnitude(lhs.mantissa_ * rhs.mantissa_, lhs.exponent_ + rhs.exponent_);
    return v;
  }

  friend ScaledValue operator/(ScaledValue lhs, ScaledValue rhs) {
    if (rhs.is_zero()) throw DomainError("ScaledValue: division by zero");
    if (lhs.is_zero()) return {};
    ScaledValue v;
    v.sign_ = lhs.sign_ * rhs.sign_;
    v.set_magnitude(lhs.mantissa_ / rhs.mantissa_, lhs.exponent_ - rhs.exponent_);
    return v;
  }

  friend ScaledValue operator*(ScaledValue lhs, double rhs) { return lhs * from_double(rhs); }
  friend ScaledValue operator*(double lhs, ScaledValue rhs) { return from_double(lhs) * rhs; }

  friend ScaledValue operator+(ScaledValue lhs, ScaledValue rhs) {
    if (lhs.is_zero()) return rhs;
    if (rhs.is_zero()) return lhs;
    const bool left_big = lhs.exponent_ >= rhs.exponent_;
    const ScaledValue& big = left_big ? lhs : rhs;
    const ScaledValue& small = left_big ? rhs : lhs;
    const std::int64_t shift = small.exponent_ - big.exponent_;  // <= 0
    if (shift < -60) return big;
    const double sum = big.sign_ * big.mantissa_ +
                       small.sign_ * std::ldexp(small.mantissa_, static_cast<int>(shift));
    if (sum == 0.0) return {};
    ScaledValue v;
    v.sign_ = sum > 0.0 ? 1 : -1;
    v.set_magnitude(std::fabs(sum), big.exponent_);
    return v;
  }

  friend ScaledValue operator-(ScaledValue lhs, ScaledValue rhs) { return lhs + (-rhs); }

 private:
  static constexpr double kLn2 = 0.69314718055994530942;

  // magnitude = m * 2^e for finite m > 0; renormalises m into [0.5, 1).
  void set_magnitude(double m, std::int64_t e) {
    int shift = 0;
    mantissa_ = std::frexp(m, &shift);
    exponent_ = e + shift;
  }

  int sign_ = 0;
  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

}  // namespace casimir
