#ifndef KUMMER_ROI_SOLVER_HPP
#define KUMMER_ROI_SOLVER_HPP

// Region of interest of the Kummer series: the dominant term index and the
// window [n_lower, n_upper] outside of which every term is below ε times the
// largest term, estimated from low-order Taylor polynomials of the log
// term-ratio sum around the mode.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "kummer/chf_core.hpp"
#include "kummer/cubic.hpp"
#include "kummer/error.hpp"

namespace kummer {

enum class Direction { Upper, Lower };

constexpr std::string_view to_string(Direction d) noexcept {
  return d == Direction::Upper ? "upper" : "lower";
}

/// Taylor polynomial used for the edge estimate. The ".5" variants keep only
/// half of the highest-order term.
enum class TaylorVariant { T1_5, T2, T2_5, T3 };

constexpr std::string_view to_string(TaylorVariant v) noexcept {
  switch (v) {
    case TaylorVariant::T1_5: return "t1.5";
    case TaylorVariant::T2: return "t2";
    case TaylorVariant::T2_5: return "t2.5";
    case TaylorVariant::T3: return "t3";
  }
  return "?";
}

/// Case-insensitive "t1.5", "t2", "t2.5", "t3".
inline std::optional<TaylorVariant> parse_variant(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (TaylorVariant v : {TaylorVariant::T1_5, TaylorVariant::T2, TaylorVariant::T2_5, TaylorVariant::T3}) {
    if (lower == to_string(v)) return v;
  }
  return std::nullopt;
}

struct ModeResult {
  double root_real = 0.0;  ///< positive root of n² + (b+1−z)n + (b−az) = 0
  TermIndex n_mode = 0;    ///< integer argmax of |mₙ|
  double discriminant = 0.0;
};

/// Coefficients of k² and k³ in log(m_{n*±k}/m_{n*}) ≈ C₂k² + C₃k³.
struct TaylorCoeffs {
  double c2_upper = 0.0;
  double c3_upper = 0.0;
  double c2_lower = 0.0;
  double c3_lower = 0.0;

  double c2(Direction d) const noexcept { return d == Direction::Upper ? c2_upper : c2_lower; }
  double c3(Direction d) const noexcept { return d == Direction::Upper ? c3_upper : c3_lower; }
};

/// g(k) = c2·k² + c3·k³ for one direction and variant.
struct EffectivePolynomial {
  double c2 = 0.0;
  double c3 = 0.0;

  double operator()(double k) const noexcept { return k * k * (c2 + c3 * k); }
  double derivative(double k) const noexcept { return k * (2.0 * c2 + 3.0 * c3 * k); }
};

inline EffectivePolynomial effective_polynomial(const TaylorCoeffs& coeffs, TaylorVariant variant,
                                                Direction dir) noexcept {
  const double c2 = coeffs.c2(dir);
  const double c3 = coeffs.c3(dir);
  switch (variant) {
    case TaylorVariant::T1_5: return {0.5 * c2, 0.0};
    case TaylorVariant::T2: return {c2, 0.0};
    case TaylorVariant::T2_5: return {c2, 0.5 * c3};
    case TaylorVariant::T3: return {c2, c3};
  }
  return {c2, c3};
}

struct RoiBounds {
  TermIndex n_lower = 0;
  TermIndex n_upper = 0;
  ModeResult mode;
  double k_lower = 0.0;
  double k_upper = 0.0;
  TaylorVariant variant = TaylorVariant::T2_5;
  double target_log_eps = 0.0;
  /// The estimated lower edge fell below 0 and was clamped to 0.
  bool lower_clamped = false;
  /// Smallest index from which all terms share one sign: max(0, ⌈−a⌉, ⌈−b⌉).
  TermIndex sign_floor = 0;

  bool crosses_sign_change() const noexcept { return n_lower < sign_floor; }
  TermIndex term_count() const noexcept { return n_upper - n_lower; }
};

inline TermIndex sign_floor(const ChfParams& p) noexcept {
  const double f = std::max({0.0, std::ceil(-p.a), std::ceil(-p.b)});
  return static_cast<TermIndex>(f);
}

/// Locates the dominant term. The quadratic comes from setting ωₙ = 1; the
/// larger root is the maximum of |mₙ|. Ties (ω exactly 1 at an integer)
/// resolve to the larger index.
inline ModeResult solve_mode(const ChfParams& p) {
  if (!(p.z > 0.0)) {
    throw ChfError(ErrorCode::NotApplicable, "solve_mode requires z > 0");
  }
  const double lin = p.b + 1.0 - p.z;
  const double cst = p.b - p.a * p.z;
  const double disc = lin * lin - 4.0 * cst;
  if (disc < 0.0) {
    throw ChfError(ErrorCode::NegativeDiscriminant,
                   "mode quadratic has no real root (discriminant " + std::to_string(disc) + ")");
  }
  const double sq = std::sqrt(disc);
  const double root = (lin <= 0.0) ? 0.5 * (sq - lin) : -2.0 * cst / (lin + sq);
  if (!(root > 0.0)) {
    throw ChfError(ErrorCode::NoPositiveRoot, "terms decrease from n = 0; no interior mode");
  }

  TermIndex n_mode = static_cast<TermIndex>(std::floor(root)) + 1;
  // Rounding can put floor(root)+1 one step off; the ratios decide.
  for (int step = 0; step < 4; ++step) {
    if (n_mode >= 1 && term_ratio(p, n_mode - 1) < 1.0) {
      --n_mode;
    } else if (term_ratio(p, n_mode) > 1.0) {
      ++n_mode;
    } else {
      break;
    }
  }
  return {root, n_mode, disc};
}

/// Quadratic and cubic Taylor coefficients at the real root n*.
inline TaylorCoeffs taylor_coefficients(const ChfParams& p, const ModeResult& mode) {
  const double n = mode.root_real;
  if (!(n > 1.0)) {
    throw ChfError(ErrorCode::ModeTooSmall,
                   "mode " + std::to_string(n) + " <= 1; the lower expansion is undefined");
  }
  const double ia = 1.0 / (p.a + n);
  const double ib = 1.0 / (p.b + n);
  const double iu = 1.0 / (n + 1.0);
  const double il = 1.0 / (n - 1.0);
  TaylorCoeffs c;
  c.c2_upper = 0.5 * (ia - ib - iu);
  c.c3_upper = -(ia * ia - ib * ib - iu * iu) / 6.0;
  c.c2_lower = 0.5 * (ia - ib - il);
  c.c3_lower = (ia * ia - ib * ib - il * il) / 6.0;
  return c;
}

/// log ε_min of a polynomial: its value at the local minimum k = −2c₂/(3c₃),
/// i.e. 4c₂³/(27c₃²). Returns −∞ when there is no positive-k minimum (c₃ ≤ 0:
/// every precision is reachable) and 0 when c₂ ≥ 0 (no precision below 1 is
/// reachable).
inline double epsilon_min(const EffectivePolynomial& poly) noexcept {
  if (!(poly.c2 < 0.0)) return 0.0;
  if (!(poly.c3 > 0.0)) return -std::numeric_limits<double>::infinity();
  return 4.0 * poly.c2 * poly.c2 * poly.c2 / (27.0 * poly.c3 * poly.c3);
}

/// log ε_min of the full cubic (T3) in one direction.
inline double epsilon_min(const TaylorCoeffs& coeffs, Direction dir) noexcept {
  return epsilon_min(EffectivePolynomial{coeffs.c2(dir), coeffs.c3(dir)});
}

inline double epsilon_min(const TaylorCoeffs& coeffs, Direction dir, TaylorVariant variant) noexcept {
  return epsilon_min(effective_polynomial(coeffs, variant, dir));
}

/// Half-width k solving g(k) = log ε. Quadratic variants invert directly; the
/// cubic variants take the root in (0, −2c₂/(3c₃)] when c₃ > 0, or the
/// unique positive root when c₃ < 0.
inline double half_width(const TaylorCoeffs& coeffs, double log_eps, TaylorVariant variant,
                         Direction dir) {
  if (!(log_eps <= 0.0)) {
    throw ChfError(ErrorCode::EpsilonOutOfRange, "log precision must be <= 0");
  }
  if (log_eps == 0.0) return 0.0;
  const EffectivePolynomial poly = effective_polynomial(coeffs, variant, dir);
  if (!(poly.c2 < 0.0)) {
    throw PrecisionBelowMinimumError(
        0.0, "quadratic coefficient " + std::to_string(poly.c2) + " >= 0 in the " +
                 std::string(to_string(dir)) + " direction; no edge estimate exists");
  }
  const double k_quadratic = std::sqrt(log_eps / poly.c2);
  if (poly.c3 == 0.0) return k_quadratic;

  double hi = k_quadratic;
  if (poly.c3 > 0.0) {
    const double log_eps_min = epsilon_min(poly);
    if (log_eps < log_eps_min) {
      throw PrecisionBelowMinimumError(
          log_eps_min, "log eps " + std::to_string(log_eps) + " below log eps_min " +
                           std::to_string(log_eps_min) + " (" + std::string(to_string(variant)) +
                           ", " + std::string(to_string(dir)) + ")");
    }
    hi = -2.0 * poly.c2 / (3.0 * poly.c3);
  }

  const CubicRoots roots = solve_cubic(poly.c2 / poly.c3, 0.0, -log_eps / poly.c3);
  double guess = 0.5 * hi;
  for (int i = 0; i < roots.count; ++i) {
    if (roots.root[i] > 0.0 && roots.root[i] <= hi * (1.0 + 1e-12)) {
      guess = std::min(roots.root[i], hi);
      break;
    }
  }
  const auto f = [&](double k) { return poly(k) - log_eps; };
  const auto df = [&](double k) { return poly.derivative(k); };
  return polish_bracketed_root(f, df, 0.0, hi, guess);
}

/// log(m_{n*±k}/m_{n*}) predicted by a variant; used to tabulate the
/// estimated precision against the edge offset.
inline double predicted_log_precision(const TaylorCoeffs& coeffs, double k, TaylorVariant variant,
                                      Direction dir) noexcept {
  return effective_polynomial(coeffs, variant, dir)(k);
}

inline RoiBounds roi_bounds(const ChfParams& p, double eps, TaylorVariant variant) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw ChfError(ErrorCode::EpsilonOutOfRange, "eps must lie in (0, 1)");
  }
  validate(p);
  const ModeResult mode = solve_mode(p);
  const TaylorCoeffs coeffs = taylor_coefficients(p, mode);
  const double log_eps = std::log(eps);

  RoiBounds r;
  r.mode = mode;
  r.variant = variant;
  r.target_log_eps = log_eps;
  r.k_upper = half_width(coeffs, log_eps, variant, Direction::Upper);
  r.k_lower = half_width(coeffs, log_eps, variant, Direction::Lower);

  const double raw_lower = std::floor(mode.root_real - r.k_lower);
  r.lower_clamped = raw_lower < 0.0;
  r.n_lower = r.lower_clamped ? 0 : static_cast<TermIndex>(raw_lower);
  r.n_upper = static_cast<TermIndex>(std::ceil(mode.root_real + r.k_upper));
  r.n_lower = std::min(r.n_lower, mode.n_mode);
  r.n_upper = std::max(r.n_upper, mode.n_mode);
  r.sign_floor = sign_floor(p);
  return r;
}

/// Parameter-level precondition for the windowed path: large enough z,
/// positive a, and not the b > max(z, a) corner where the Taylor model
/// loses fidelity.
inline bool roi_applicable(const ChfParams& p, double z_threshold = 50.0) noexcept {
  return p.z > z_threshold && p.a > 0.0 && !(p.b > p.z && p.b > p.a);
}

}  // namespace kummer

#endif  // KUMMER_ROI_SOLVER_HPP
