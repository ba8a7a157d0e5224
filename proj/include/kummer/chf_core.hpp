#ifndef KUMMER_CHF_CORE_HPP
#define KUMMER_CHF_CORE_HPP

// Term algebra of the Kummer series M(a, b, z) = Σ a⁽ⁿ⁾ zⁿ / (b⁽ⁿ⁾ n!).

#include <cmath>
#include <cstdint>
#include <string>

#include "kummer/double_double.hpp"
#include "kummer/error.hpp"
#include "kummer/log_gamma.hpp"
#include "kummer/signed_log.hpp"

namespace kummer {

using TermIndex = std::int64_t;

struct ChfParams {
  double a = 0.0;
  double b = 1.0;
  double z = 0.0;

  friend bool operator==(const ChfParams&, const ChfParams&) = default;
};

inline bool is_nonpositive_integer(double x) noexcept { return x <= 0.0 && x == std::floor(x); }

/// Throws InvalidParams unless a, b, z are finite and b is not 0, -1, -2, ...
inline void validate(const ChfParams& p) {
  if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.z)) {
    throw ChfError(ErrorCode::InvalidParams, "a, b and z must be finite");
  }
  if (is_nonpositive_integer(p.b)) {
    throw ChfError(ErrorCode::InvalidParams,
                   "b = " + std::to_string(p.b) + " is a pole of the series denominator");
  }
}

/// ωₙ = m_{n+1}/mₙ = (a+n)/(b+n) · z/(n+1).
inline double term_ratio(const ChfParams& p, TermIndex n) {
  const double nd = static_cast<double>(n);
  const double denom = (p.b + nd) * (nd + 1.0);
  if (p.b + nd == 0.0) {
    throw ChfError(ErrorCode::PoleAtIndex, "b + n = 0 at n = " + std::to_string(n));
  }
  return (p.a + nd) * p.z / denom;
}

/// Sign and log|mₙ| from the O(n) product of term ratios. Handles any sign
/// of a, b, z; a zero factor (a a non-positive integer) yields sign 0.
inline SignedLog log_term_product(const ChfParams& p, TermIndex n) {
  int sign = 1;
  CompensatedSum log_mag;
  for (TermIndex i = 0; i < n; ++i) {
    const double w = term_ratio(p, i);
    if (w == 0.0) {
      // Zero factor; still scan for a pole in the remaining factors.
      for (TermIndex j = i + 1; j < n; ++j) {
        if (p.b + static_cast<double>(j) == 0.0) {
          throw ChfError(ErrorCode::PoleAtIndex, "b + n = 0 at n = " + std::to_string(j));
        }
      }
      return SignedLog::zero();
    }
    if (w < 0.0) sign = -sign;
    log_mag += std::log(std::abs(w));
  }
  return {sign, log_mag.value()};
}

/// Sign and log|mₙ| through log-Gamma differences; requires a > 0, b > 0.
/// Grouped as [lnΓ(a+n) − lnΓ(b+n)] + [lnΓ(b) − lnΓ(a)] + ln(|z|ⁿ/n!) so
/// that no two large log-Gamma values are subtracted.
inline SignedLog log_term_gamma(const ChfParams& p, TermIndex n) {
  if (!(p.a > 0.0) || !(p.b > 0.0)) {
    throw ChfError(ErrorCode::NotApplicable, "log_term_gamma needs a > 0 and b > 0");
  }
  if (n == 0) return SignedLog::one();
  if (p.z == 0.0) return SignedLog::zero();
  const double nd = static_cast<double>(n);
  const double log_mag = log_gamma_diff(p.b + nd, p.a - p.b) + log_gamma_diff(p.a, p.b - p.a) +
                         log_power_over_factorial(nd, std::abs(p.z));
  const int sign = (p.z < 0.0 && (n % 2) == 1) ? -1 : 1;
  return {sign, log_mag};
}

/// Sign and natural log of |mₙ|.
inline SignedLog log_term(const ChfParams& p, TermIndex n) {
  if (n == 0) return SignedLog::one();
  if (p.a > 0.0 && p.b > 0.0) return log_term_gamma(p, n);
  return log_term_product(p, n);
}

/// Kummer's transformation on the parameter triple: (a, b, z) ↦ (b−a, b, −z).
/// Total, and an involution.
inline ChfParams kummer_parameters(const ChfParams& p) noexcept { return {p.b - p.a, p.b, -p.z}; }

struct KummerReflection {
  ChfParams params;
  SignedLog scale;  ///< M(a,b,z) = scale · M(params)
};

/// For z < 0: M(a, b, z) = e^z · M(b − a, b, −z).
inline KummerReflection kummer_reflect(const ChfParams& p) {
  if (!(p.z < 0.0)) {
    throw ChfError(ErrorCode::NotApplicable, "Kummer reflection is applied only for z < 0");
  }
  return {kummer_parameters(p), SignedLog{1, p.z}};
}

}  // namespace kummer

#endif  // KUMMER_CHF_CORE_HPP
