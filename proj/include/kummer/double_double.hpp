#ifndef KUMMER_DOUBLE_DOUBLE_HPP
#define KUMMER_DOUBLE_DOUBLE_HPP

// Error-free transformations and an unevaluated-pair ("double-double")
// number type. Requires strict IEEE double arithmetic: do not compile with
// -ffast-math or -fassociative-math.

#include <cmath>

namespace kummer {

struct ExactSum {
  double sum;
  double err;
};

/// Knuth's branch-free TwoSum: a + b == sum + err exactly.
inline constexpr ExactSum two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

/// Dekker's FastTwoSum, valid when |a| >= |b| (or a == 0).
inline constexpr ExactSum fast_two_sum(double a, double b) noexcept {
  const double s = a + b;
  return {s, b - (s - a)};
}

/// a * b == sum + err exactly (sum is the rounded product).
inline ExactSum two_prod(double a, double b) noexcept {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

/// Running sum with a second-order correction term (Neumaier's variant of
/// Kahan summation). The result is as if accumulated in twice the precision
/// and rounded once.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) noexcept : sum_(initial) {}

  void add(double x) noexcept {
    const ExactSum s = two_sum(sum_, x);
    sum_ = s.sum;
    comp_ += s.err;
  }

  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Non-overlapping pair hi + lo with |lo| <= ulp(hi)/2; about 106 bits.
class DoubleDouble {
 public:
  constexpr DoubleDouble() noexcept = default;
  constexpr DoubleDouble(double x) noexcept : hi_(x) {}  // NOLINT: implicit by design of the arithmetic
  constexpr DoubleDouble(double hi, double lo) noexcept : hi_(hi), lo_(lo) {}

  constexpr double hi() const noexcept { return hi_; }
  constexpr double lo() const noexcept { return lo_; }
  constexpr double to_double() const noexcept { return hi_ + lo_; }

  /// Exact sum of two doubles.
  static constexpr DoubleDouble sum_of(double a, double b) noexcept {
    const ExactSum s = two_sum(a, b);
    return {s.sum, s.err};
  }

  friend DoubleDouble operator+(const DoubleDouble& x, const DoubleDouble& y) noexcept {
    ExactSum s = two_sum(x.hi_, y.hi_);
    const ExactSum t = two_sum(x.lo_, y.lo_);
    s.err += t.sum;
    s = fast_two_sum(s.sum, s.err);
    s.err += t.err;
    s = fast_two_sum(s.sum, s.err);
    return {s.sum, s.err};
  }

  friend DoubleDouble operator-(const DoubleDouble& x) noexcept { return {-x.hi_, -x.lo_}; }
  friend DoubleDouble operator-(const DoubleDouble& x, const DoubleDouble& y) noexcept {
    return x + (-y);
  }

  friend DoubleDouble operator*(const DoubleDouble& x, const DoubleDouble& y) noexcept {
    ExactSum p = two_prod(x.hi_, y.hi_);
    p.err += x.hi_ * y.lo_ + x.lo_ * y.hi_;
    p = fast_two_sum(p.sum, p.err);
    return {p.sum, p.err};
  }

  friend DoubleDouble operator/(const DoubleDouble& x, const DoubleDouble& y) noexcept {
    const double q1 = x.hi_ / y.hi_;
    DoubleDouble r = x - y * DoubleDouble(q1);
    const double q2 = r.hi_ / y.hi_;
    r = r - y * DoubleDouble(q2);
    const double q3 = r.hi_ / y.hi_;
    const ExactSum s = fast_two_sum(q1, q2);
    return DoubleDouble(s.sum, s.err) + DoubleDouble(q3);
  }

  DoubleDouble& operator+=(const DoubleDouble& y) noexcept { return *this = *this + y; }
  DoubleDouble& operator*=(const DoubleDouble& y) noexcept { return *this = *this * y; }
  DoubleDouble& operator/=(const DoubleDouble& y) noexcept { return *this = *this / y; }

  friend DoubleDouble abs(const DoubleDouble& x) noexcept { return x.hi_ < 0.0 ? -x : x; }

  /// Natural log, accurate to double precision relative to the result
  /// (the low word only corrects the argument).
  friend double log(const DoubleDouble& x) noexcept { return std::log(x.hi_) + std::log1p(x.lo_ / x.hi_); }

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
};

}  // namespace kummer

#endif  // KUMMER_DOUBLE_DOUBLE_HPP
