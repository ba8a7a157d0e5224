#ifndef KUMMER_CUBIC_HPP
#define KUMMER_CUBIC_HPP

// Real roots of monic cubics and a bracketed root polisher.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace kummer {

struct CubicRoots {
  std::array<double, 3> root{};
  int count = 0;
};

/// Real roots of x³ + p2·x² + p1·x + p0 = 0 via the depressed cubic:
/// trigonometric form for three real roots, Cardano otherwise. Roots are
/// sorted ascending. A double root may be reported once or twice.
inline CubicRoots solve_cubic(double p2, double p1, double p0) {
  const double shift = p2 / 3.0;
  const double q = (p2 * p2 - 3.0 * p1) / 9.0;
  const double r = (p2 * (2.0 * p2 * p2 - 9.0 * p1) + 27.0 * p0) / 54.0;
  const double q3 = q * q * q;
  CubicRoots out;
  if (r * r < q3) {
    const double t = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
    const double m = -2.0 * std::sqrt(q);
    out.root = {m * std::cos(t / 3.0) - shift,
                m * std::cos((t + 2.0 * std::numbers::pi) / 3.0) - shift,
                m * std::cos((t - 2.0 * std::numbers::pi) / 3.0) - shift};
    out.count = 3;
    std::sort(out.root.begin(), out.root.end());
    return out;
  }
  const double u = -std::cbrt(r + std::copysign(std::sqrt(r * r - q3), r));
  const double v = (u == 0.0) ? 0.0 : q / u;
  out.root[0] = (u + v) - shift;
  out.count = 1;
  return out;
}

/// Polishes a root of f on [lo, hi] where f(lo) and f(hi) have opposite
/// signs (or one is zero). Newton steps from `guess`, falling back to
/// bisection whenever a step leaves the shrinking bracket.
template <typename F, typename DF>
double polish_bracketed_root(F&& f, DF&& df, double lo, double hi, double guess,
                             int max_iter = 200) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
  for (int i = 0; i < max_iter; ++i) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double d = df(x);
    double next = (d != 0.0) ? x - fx / d : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x) ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi)) {
      return next;
    }
    x = next;
  }
  return x;
}

}  // namespace kummer

#endif  // KUMMER_CUBIC_HPP
