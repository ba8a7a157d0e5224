#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kummer/reference_oracle.hpp"

using namespace kummer;

namespace {

double log_rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

double direct_log_ratio(const ChfParams& p, TermIndex from, TermIndex to) {
  CompensatedSum s;
  for (TermIndex n = from; n < to; ++n) s += std::log(std::abs(term_ratio(p, n)));
  for (TermIndex n = to; n < from; ++n) s += -std::log(std::abs(term_ratio(p, n)));
  return s.value();
}

}  // namespace

TEST(ExactHalfWidth, FrozenEdges) {
  const ChfParams p{2.0, 3.0, 100.0};
  EXPECT_EQ(exact_half_width(p, 1e-12, Direction::Upper), 83);
  EXPECT_EQ(exact_half_width(p, 1e-12, Direction::Lower), 65);
  EXPECT_EQ(exact_half_width(p, 1.0, Direction::Upper), 0);
  EXPECT_THROW(exact_half_width(p, 0.0, Direction::Upper), ChfError);
}

TEST(ExactHalfWidth, UniqueCrossing) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const ChfParams p{0.5 + 50.0 * u(rng), 0.5 + 50.0 * u(rng), 60.0 + 1000.0 * u(rng)};
    ModeResult m;
    try {
      m = solve_mode(p);
    } catch (const ChfError&) {
      continue;
    }
    const double eps = std::pow(10.0, -2.0 - 14.0 * u(rng));
    for (Direction d : {Direction::Upper, Direction::Lower}) {
      const TermIndex k = exact_half_width(p, eps, d);
      const TermIndex sgn = d == Direction::Upper ? 1 : -1;
      const TermIndex edge = m.n_mode + sgn * k;
      if (edge == 0) continue;
      EXPECT_LE(direct_log_ratio(p, m.n_mode, edge), std::log(eps));
      if (k > 0) {
        EXPECT_GT(direct_log_ratio(p, m.n_mode, edge - sgn), std::log(eps));
      }
    }
  }
}

TEST(PrecisionCurve, EqualParametersClosedForm) {
  // a = b: m_{n+k}/m_n = z^k n!/(n+k)!.
  const ChfParams p{4.0, 4.0, 100.0};
  const PrecisionCurve c = precision_curve(p, 50, Direction::Upper);
  const TermIndex mode = solve_mode(p).n_mode;
  ASSERT_EQ(c.points.size(), 51u);
  for (const CurvePoint& pt : c.points) {
    const TermIndex k = pt.edge_index - mode;
    const double want = k * std::log(100.0) + std::lgamma(mode + 1.0) - std::lgamma(mode + k + 1.0);
    EXPECT_NEAR(pt.log_ratio, want, 1e-11);
  }
  EXPECT_EQ(c.points.front().log_ratio, 0.0);
}

TEST(PrecisionCurve, MatchesLogTermDifferences) {
  for (double z : {50.0, 100.0}) {
    for (double a : {0.5, 2.0, 10.0, z, 5.0 * z}) {
      for (double b : {0.5, 5.0, 0.5 * z, 0.9 * z}) {
        const ChfParams p{a, b, z};
        ModeResult m;
        try {
          m = solve_mode(p);
        } catch (const ChfError&) {
          continue;
        }
        const double at_mode = log_term(p, m.n_mode).log_mag;
        for (Direction d : {Direction::Upper, Direction::Lower}) {
          const PrecisionCurve c = precision_curve(p, static_cast<TermIndex>(3 * z), d);
          double prev = 1.0;
          for (const CurvePoint& pt : c.points) {
            EXPECT_NEAR(pt.log_ratio, log_term(p, pt.edge_index).log_mag - at_mode,
                        1e-9 * std::max(1.0, std::abs(pt.log_ratio)));
            EXPECT_LE(pt.log_ratio, prev);
            prev = pt.log_ratio;
          }
        }
      }
    }
  }
}

TEST(PrecisionCurve, NegativeNonIntegerB) {
  const ChfParams p{2.0, -5.5, 50.0};
  const PrecisionCurve lower = precision_curve(p, 200, Direction::Lower);
  ASSERT_FALSE(lower.points.empty());
  EXPECT_GE(lower.points.back().edge_index, 6);
  for (const CurvePoint& pt : lower.points) EXPECT_TRUE(std::isfinite(pt.log_ratio));
}

TEST(ReferenceValue, ClosedForms) {
  EXPECT_LE(log_rel(reference_value({1.0, 1.0, 200.0}, 1e-12).log_mag, 200.0), 1e-13);
  EXPECT_LE(log_rel(reference_value({1.0, 2.0, 100.0}, 1e-12).log_mag,
                    100.0 + std::log1p(-std::exp(-100.0)) - std::log(100.0)),
            1e-13);
  const SignedLog erf_case = reference_value({0.5, 1.5, -4.0}, 1e-12);
  EXPECT_EQ(erf_case.sign, 1);
  EXPECT_NEAR(erf_case.to_value(), 0.44104069538121084, 1e-15);
  for (double z : {10.0, 1000.0, 1e4}) {
    EXPECT_LE(log_rel(reference_value({3.0, 3.0, z}, 1e-12).log_mag, z), 1e-13);
    EXPECT_LE(log_rel(reference_value({1.0, 2.0, z}, 1e-12).log_mag,
                      z + std::log1p(-std::exp(-z)) - std::log(z)),
              1e-13);
    // M(1/2, 3/2, −z) = (√π/2)·erf(√z)/√z.
    const double s = std::sqrt(z);
    EXPECT_LE(log_rel(reference_value({0.5, 1.5, -z}, 1e-12).log_mag,
                      std::log(0.5 * std::sqrt(std::acos(-1.0)) * std::erf(s) / s)),
              1e-12);
  }
}

TEST(ReferenceValue, FrozenValues) {
  EXPECT_NEAR(reference_value({2.0, 3.0, 100.0}, 1e-12).log_mag, 96.077926658718352, 1e-12);
  EXPECT_NEAR(reference_value({5.0, 0.5, 50.0}, 1e-12).log_mag, 65.334221974056461, 1e-12);
  EXPECT_NEAR(reference_value({0.5, 1.5, 4.0}, 1e-12).log_mag, 2.1073380264779738, 1e-14);
  EXPECT_NEAR(reference_value({1.0, 2.0, -30.0}, 1e-12).to_value(), 0.033333333333330214, 1e-16);
  EXPECT_TRUE(reference_value({-3.0, 2.0, 5.0}, 1e-12).sign != 0);
}
