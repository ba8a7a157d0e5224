#ifndef KUMMER_SIGNED_LOG_HPP
#define KUMMER_SIGNED_LOG_HPP

#include <cmath>
#include <limits>

namespace kummer {

/// A real number stored as sign and natural log of magnitude, so that terms
/// like e^{5000} stay representable. Zero is sign 0 with log_mag = -inf and
/// absorbs under multiplication.
struct SignedLog {
  int sign = 0;
  double log_mag = -std::numeric_limits<double>::infinity();

  static constexpr SignedLog zero() noexcept { return {}; }
  static constexpr SignedLog one() noexcept { return {1, 0.0}; }
  static SignedLog from_log(int sign, double log_mag) noexcept {
    return sign == 0 ? zero() : SignedLog{sign < 0 ? -1 : 1, log_mag};
  }
  static SignedLog from_value(double x) noexcept {
    if (x == 0.0) return zero();
    return {x < 0.0 ? -1 : 1, std::log(std::abs(x))};
  }

  bool is_zero() const noexcept { return sign == 0; }

  /// Linear value; overflows to ±inf and underflows to ±0 outside the
  /// double range.
  double to_value() const noexcept {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_mag);
  }

  friend SignedLog operator*(const SignedLog& x, const SignedLog& y) noexcept {
    if (x.sign == 0 || y.sign == 0) return zero();
    return {x.sign * y.sign, x.log_mag + y.log_mag};
  }
  friend SignedLog operator/(const SignedLog& x, const SignedLog& y) noexcept {
    if (x.sign == 0) return zero();
    return {x.sign * y.sign, x.log_mag - y.log_mag};
  }

  friend bool operator==(const SignedLog&, const SignedLog&) = default;
};

}  // namespace kummer

#endif  // KUMMER_SIGNED_LOG_HPP
