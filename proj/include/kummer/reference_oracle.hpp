#ifndef KUMMER_REFERENCE_ORACLE_HPP
#define KUMMER_REFERENCE_ORACLE_HPP

// Ground truth for tests and experiments. Nothing here goes through the
// log-Gamma path or the Taylor estimates: exact edges come from walking the
// term ratios outward from the mode, and reference values from a
// double-double sum anchored at the numerically located maximum term.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "kummer/chf_core.hpp"
#include "kummer/double_double.hpp"
#include "kummer/error.hpp"
#include "kummer/roi_solver.hpp"
#include "kummer/signed_log.hpp"

namespace kummer {

struct CurvePoint {
  TermIndex edge_index = 0;
  double log_ratio = 0.0;  ///< ln(|m_edge| / |m_mode|)
};

struct PrecisionCurve {
  Direction direction = Direction::Upper;
  std::vector<CurvePoint> points;
};

namespace detail {

inline constexpr TermIndex kOracleMaxSteps = 50'000'000;

/// Lowest index a downward walk may reach: terms below ⌈−b⌉ change sign.
inline TermIndex lower_walk_floor(const ChfParams& p) noexcept {
  return p.b < 0.0 ? static_cast<TermIndex>(std::ceil(-p.b)) : 0;
}

}  // namespace detail

/// Log-ratios ln(m_{n_m±k}/m_{n_m}) for k = 0..k_max from cumulative logs of
/// term ratios. The lower curve stops at index 0 (or ⌈−b⌉ for b < 0).
inline PrecisionCurve precision_curve(const ChfParams& p, TermIndex k_max, Direction dir) {
  validate(p);
  const TermIndex mode = solve_mode(p).n_mode;
  const TermIndex floor_index = detail::lower_walk_floor(p);
  PrecisionCurve curve;
  curve.direction = dir;
  curve.points.reserve(static_cast<std::size_t>(std::max<TermIndex>(k_max, 0) + 1));
  CompensatedSum log_ratio;
  curve.points.push_back({mode, 0.0});
  for (TermIndex k = 1; k <= k_max; ++k) {
    TermIndex edge;
    if (dir == Direction::Upper) {
      edge = mode + k;
      log_ratio += std::log(std::abs(term_ratio(p, edge - 1)));
    } else {
      edge = mode - k;
      if (edge < floor_index) break;
      log_ratio += -std::log(std::abs(term_ratio(p, edge)));
    }
    curve.points.push_back({edge, log_ratio.value()});
  }
  return curve;
}

/// Smallest k >= 0 with |m_{n_m±k}| / |m_{n_m}| <= ε, found by walking the
/// recurrence outward from the mode. The lower walk stops at index 0 (or
/// ⌈−b⌉ for b < 0) and returns the distance to it.
inline TermIndex exact_half_width(const ChfParams& p, double eps, Direction dir) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw ChfError(ErrorCode::EpsilonOutOfRange, "eps must lie in (0, 1]");
  }
  validate(p);
  const TermIndex mode = solve_mode(p).n_mode;
  const TermIndex floor_index = detail::lower_walk_floor(p);
  const double log_eps = std::log(eps);
  CompensatedSum log_ratio;
  TermIndex k = 0;
  while (log_ratio.value() > log_eps) {
    if (k >= detail::kOracleMaxSteps) {
      throw ChfError(ErrorCode::NoConvergence, "exact edge not reached");
    }
    if (dir == Direction::Upper) {
      log_ratio += std::log(std::abs(term_ratio(p, mode + k)));
    } else {
      if (mode - k <= floor_index) return k;
      log_ratio += -std::log(std::abs(term_ratio(p, mode - k - 1)));
    }
    ++k;
  }
  return k;
}

/// M(a, b, z) to about 30 significant digits in the sum (the returned log
/// carries double precision). Terms are summed outward from the largest one
/// in double-double, until the remaining terms fall below ε² of it.
inline SignedLog reference_value(const ChfParams& params, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ChfError(ErrorCode::EpsilonOutOfRange, "eps must lie in (0, 1)");
  }
  validate(params);
  if (params.z == 0.0) return SignedLog::one();
  ChfParams p = params;
  double log_scale = 0.0;
  if (p.z < 0.0) {
    log_scale = p.z;
    p = kummer_parameters(p);
  }

  // Locate the maximum on the log scale, and how far the tail must run.
  const double log_cut = 2.0 * std::log(eps) - 10.0;
  double tail_start = std::max({0.0, -p.a, -p.b});
  {
    const double lin = p.b + 1.0 - p.z;
    const double disc = lin * lin - 4.0 * (p.b - p.a * p.z);
    if (disc >= 0.0) tail_start = std::max(tail_start, 0.5 * (-lin + std::sqrt(disc)));
  }
  std::vector<double> log_mag{0.0};
  std::vector<signed char> sign{1};
  CompensatedSum running;
  int s = 1;
  TermIndex argmax = 0;
  double log_max = 0.0;
  for (TermIndex n = 0;; ++n) {
    if (n >= detail::kOracleMaxSteps) {
      throw ChfError(ErrorCode::NoConvergence, "reference sum did not converge");
    }
    const double w = term_ratio(p, n);
    if (w == 0.0) break;
    if (w < 0.0) s = -s;
    running += std::log(std::abs(w));
    const double lm = running.value();
    log_mag.push_back(lm);
    sign.push_back(static_cast<signed char>(s));
    if (lm > log_max) {
      log_max = lm;
      argmax = n + 1;
    }
    if (static_cast<double>(n + 1) > tail_start && lm - log_max < log_cut) break;
  }
  const auto last = static_cast<TermIndex>(log_mag.size()) - 1;
  TermIndex lo = 0;
  while (lo < argmax && log_mag[lo] - log_max < log_cut) ++lo;
  TermIndex hi = last;
  while (hi > argmax && log_mag[hi] - log_max < log_cut) --hi;

  // Ratios to the maximum term, in double-double.
  const auto exact_ratio = [&p](TermIndex n) {
    const double nd = static_cast<double>(n);
    const DoubleDouble num = DoubleDouble::sum_of(p.a, nd) * DoubleDouble(p.z);
    const DoubleDouble den = DoubleDouble::sum_of(p.b, nd) * DoubleDouble(nd + 1.0);
    return num / den;
  };
  DoubleDouble total(1.0);
  DoubleDouble t(1.0);
  for (TermIndex n = argmax; n < hi; ++n) {
    t *= exact_ratio(n);
    total += t;
  }
  t = DoubleDouble(1.0);
  for (TermIndex n = argmax; n > lo; --n) {
    t /= exact_ratio(n - 1);
    total += t;
  }
  if (total.hi() == 0.0) return SignedLog::zero();
  const int total_sign = total.hi() < 0.0 ? -1 : 1;
  return {sign[argmax] * total_sign, log_scale + log_mag[argmax] + log(abs(total))};
}

}  // namespace kummer

#endif  // KUMMER_REFERENCE_ORACLE_HPP
