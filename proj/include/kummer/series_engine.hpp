#ifndef KUMMER_SERIES_ENGINE_HPP
#define KUMMER_SERIES_ENGINE_HPP

// Evaluation of M(a, b, z): the windowed sum over the region of interest,
// the classical increment-and-check sum from n = 0, and the dispatcher.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "kummer/chf_core.hpp"
#include "kummer/double_double.hpp"
#include "kummer/error.hpp"
#include "kummer/roi_solver.hpp"
#include "kummer/signed_log.hpp"

namespace kummer {

enum class Method { Roi, IncrementCheck };

constexpr std::string_view to_string(Method m) noexcept {
  return m == Method::Roi ? "roi" : "ic";
}

struct EvalResult {
  double value = 0.0;  ///< linear value; ±inf (or 0) when outside the double range
  SignedLog log_value;
  Method method = Method::IncrementCheck;
  bool kummer_applied = false;
  TermIndex terms_summed = 0;
  double term_range_log = 0.0;  ///< ln(max |term| / min |term|) over the summed terms
  std::optional<RoiBounds> bounds;
  TermIndex edge_extension = 0;  ///< terms added beyond the estimated window
};

struct EvalOptions {
  std::optional<Method> force_method;
  double roi_z_threshold = 50.0;
  TermIndex max_terms = 1'000'000;
};

namespace detail {

inline double linear_value(const SignedLog& v) noexcept { return v.to_value(); }

/// Tracks the magnitude range of non-zero summed terms.
class TermRange {
 public:
  void observe(double t) noexcept {
    const double m = std::abs(t);
    if (m == 0.0) return;
    max_ = std::max(max_, m);
    min_ = std::min(min_, m);
  }
  double log_range() const noexcept {
    return max_ > 0.0 ? std::log(max_) - std::log(min_) : 0.0;
  }

 private:
  double max_ = 0.0;
  double min_ = std::numeric_limits<double>::infinity();
};

}  // namespace detail

namespace detail {

/// ωₙ without the pole check, for parameters that passed `validate`.
inline double ratio_unchecked(const ChfParams& p, double n) noexcept {
  return (p.a + n) * p.z / ((p.b + n) * (n + 1.0));
}

inline constexpr TermIndex kMaxEdgeExtension = 10'000'000;

}  // namespace detail

/// Sums mₙ over [n_lower, n_upper]: m_{n_lower} from its closed form on the
/// log scale, later terms by the forward recurrence as ratios to it, with
/// compensated accumulation. If a terminal term is still above ε times the
/// largest one (ε from `bounds.target_log_eps`), the window is widened on
/// that side until it is not; `bounds` in the result reports the summed
/// window.
inline EvalResult sum_region(const ChfParams& p, const RoiBounds& bounds) {
  validate(p);
  if (bounds.n_lower < 0 || bounds.n_upper < bounds.n_lower) {
    throw ChfError(ErrorCode::InvalidBounds, "window [" + std::to_string(bounds.n_lower) + ", " +
                                                 std::to_string(bounds.n_upper) + "] is empty");
  }
  const SignedLog anchor = log_term(p, bounds.n_lower);
  if (anchor.is_zero()) {
    throw ChfError(ErrorCode::InvalidBounds, "term at the lower edge is zero");
  }

  CompensatedSum sum(1.0);
  double t = 1.0;
  double t_max = 1.0;
  // Terms are unimodal over a same-sign window, so the smallest sits at an edge.
  const double end = static_cast<double>(bounds.n_upper);
  for (double n = static_cast<double>(bounds.n_lower); n < end; n += 1.0) {
    t *= detail::ratio_unchecked(p, n);
    sum.add(t);
    t_max = std::max(t_max, std::abs(t));
  }
  double t_min = std::min(1.0, std::abs(t));
  const auto take = [&](double v) {
    sum.add(v);
    const double m = std::abs(v);
    t_max = std::max(t_max, m);
    t_min = std::min(t_min, m);
  };

  TermIndex lower = bounds.n_lower;
  TermIndex upper = bounds.n_upper;
  if (bounds.target_log_eps < 0.0) {
    const double eps = std::exp(bounds.target_log_eps);
    TermIndex steps = 0;
    while (std::abs(t) > eps * t_max && t != 0.0 && steps++ < detail::kMaxEdgeExtension) {
      t *= detail::ratio_unchecked(p, static_cast<double>(upper));
      ++upper;
      take(t);
    }
    double t_low = 1.0;
    while (lower > bounds.sign_floor && std::abs(t_low) > eps * t_max &&
           steps++ < detail::kMaxEdgeExtension) {
      --lower;
      t_low /= detail::ratio_unchecked(p, static_cast<double>(lower));
      take(t_low);
    }
    if (steps > detail::kMaxEdgeExtension) {
      throw ChfError(ErrorCode::NoConvergence, "window edges kept growing");
    }
  }
  const double total = sum.value();
  if (!std::isfinite(total)) {
    throw ChfError(ErrorCode::Overflow, "scaled window sum left the double range");
  }

  EvalResult r;
  r.log_value = anchor * SignedLog::from_value(total);
  r.value = detail::linear_value(r.log_value);
  r.method = Method::Roi;
  r.terms_summed = upper - lower + 1;
  r.term_range_log = std::log(t_max) - std::log(t_min);
  r.bounds = bounds;
  r.bounds->n_lower = lower;
  r.bounds->n_upper = upper;
  r.edge_extension = (bounds.n_lower - lower) + (upper - bounds.n_upper);
  return r;
}

/// Smallest index past which terms only shrink in magnitude: beyond the
/// larger root of the mode quadratic and clear of the poles/zeros of the
/// rising factorials.
inline TermIndex monotone_tail_start(const ChfParams& p) noexcept {
  double start = std::max({0.0, -p.a, -p.b});
  if (p.z != 0.0) {
    const double z = std::abs(p.z);
    const double lin = p.b + 1.0 - z;
    const double disc = lin * lin - 4.0 * (p.b - p.a * z);
    if (disc >= 0.0) start = std::max(start, 0.5 * (std::sqrt(disc) - lin));
  }
  return static_cast<TermIndex>(std::ceil(start));
}

/// Classical summation from m₀ = 1 until |mₙ| / |S_{n−1}| < ε (and the
/// terms are past their maximum).
inline EvalResult increment_check(const ChfParams& p, double eps,
                                  TermIndex max_terms = EvalOptions{}.max_terms) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ChfError(ErrorCode::EpsilonOutOfRange, "eps must lie in (0, 1)");
  }
  validate(p);
  const TermIndex tail = monotone_tail_start(p);

  CompensatedSum sum(1.0);
  detail::TermRange range;
  range.observe(1.0);
  double m = 1.0;
  TermIndex terms = 1;
  for (TermIndex n = 0;; ++n) {
    if (terms >= max_terms) {
      throw ChfError(ErrorCode::NoConvergence,
                     "no convergence after " + std::to_string(max_terms) + " terms");
    }
    const double w = term_ratio(p, n);
    const double previous = std::abs(sum.value());
    m *= w;
    if (!std::isfinite(m)) {
      throw ChfError(ErrorCode::Overflow,
                     "term " + std::to_string(n + 1) + " overflowed the double range");
    }
    if (m == 0.0) {
      if (w == 0.0) break;  // series terminates
      if (n + 1 < tail) {
        throw ChfError(ErrorCode::Overflow,
                       "term " + std::to_string(n + 1) + " underflowed before the maximum");
      }
      break;
    }
    sum.add(m);
    range.observe(m);
    ++terms;
    if (!std::isfinite(sum.value())) {
      throw ChfError(ErrorCode::Overflow, "partial sum overflowed the double range");
    }
    if (n + 1 >= tail && std::abs(m) < eps * previous) break;
  }

  EvalResult r;
  r.value = sum.value();
  r.log_value = SignedLog::from_value(r.value);
  r.method = Method::IncrementCheck;
  r.terms_summed = terms;
  r.term_range_log = range.log_range();
  return r;
}

namespace detail {

/// Bounds for the windowed path, retrying with the conservative quadratic
/// variant when the cubic cannot reach ε. Empty when the window would mix
/// term signs or no interior mode exists.
inline std::optional<RoiBounds> auto_roi_bounds(const ChfParams& p, double eps, TaylorVariant variant) {
  try {
    RoiBounds b;
    try {
      b = roi_bounds(p, eps, variant);
    } catch (const PrecisionBelowMinimumError&) {
      if (variant == TaylorVariant::T1_5) throw;
      b = roi_bounds(p, eps, TaylorVariant::T1_5);
    }
    if (b.crosses_sign_change()) return std::nullopt;
    return b;
  } catch (const ChfError& e) {
    if (e.is_no_root() || e.code() == ErrorCode::ModeTooSmall ||
        e.code() == ErrorCode::PrecisionBelowMinimum) {
      return std::nullopt;
    }
    throw;
  }
}

inline EvalResult dispatch(const ChfParams& p, double eps, TaylorVariant variant,
                           const EvalOptions& opt) {
  if (opt.force_method == Method::IncrementCheck) return increment_check(p, eps, opt.max_terms);
  if (opt.force_method == Method::Roi) {
    const RoiBounds b = roi_bounds(p, eps, variant);
    if (b.crosses_sign_change()) {
      throw ChfError(ErrorCode::NotApplicable, "window reaches below the sign-change index " +
                                                   std::to_string(b.sign_floor));
    }
    return sum_region(p, b);
  }

  if (roi_applicable(p, opt.roi_z_threshold)) {
    if (auto b = auto_roi_bounds(p, eps, variant)) return sum_region(p, *b);
    return increment_check(p, eps, opt.max_terms);
  }
  try {
    return increment_check(p, eps, opt.max_terms);
  } catch (const ChfError& e) {
    // The plain sum left the double range; retry with the T1.5 window.
    if (e.code() != ErrorCode::Overflow || !(p.a > 0.0) || !(p.z > 0.0)) throw;
    if (auto b = auto_roi_bounds(p, eps, TaylorVariant::T1_5)) return sum_region(p, *b);
    throw;
  }
}

}  // namespace detail

/// M(a, b, z). Negative z goes through Kummer's transformation first; the
/// windowed path runs when `roi_applicable` holds and a valid window exists,
/// otherwise increment-and-check.
inline EvalResult evaluate(const ChfParams& params, double eps,
                           TaylorVariant variant = TaylorVariant::T2_5,
                           const EvalOptions& options = {}) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ChfError(ErrorCode::EpsilonOutOfRange, "eps must lie in (0, 1)");
  }
  validate(params);
  if (params.z == 0.0) {
    EvalResult r;
    r.value = 1.0;
    r.log_value = SignedLog::one();
    r.terms_summed = 1;
    return r;
  }

  ChfParams work = params;
  SignedLog scale = SignedLog::one();
  const bool reflect = params.z < 0.0;
  if (reflect) {
    const KummerReflection k = kummer_reflect(params);
    work = k.params;
    scale = k.scale;
  }
  EvalResult r = detail::dispatch(work, eps, variant, options);
  r.kummer_applied = reflect;
  if (reflect) {
    r.log_value = r.log_value * scale;
    r.value = detail::linear_value(r.log_value);
  }
  return r;
}

}  // namespace kummer

#endif  // KUMMER_SERIES_ENGINE_HPP
