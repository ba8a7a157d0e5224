#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kummer/reference_oracle.hpp"
#include "kummer/series_engine.hpp"

using namespace kummer;

namespace {

double log_rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

EvalOptions forced(Method m) {
  EvalOptions o;
  o.force_method = m;
  return o;
}

}  // namespace

TEST(SumRegion, ClosedForms) {
  const ChfParams e100{1.0, 1.0, 100.0};
  const EvalResult r = sum_region(e100, roi_bounds(e100, 1e-12, TaylorVariant::T2_5));
  EXPECT_LE(log_rel(r.log_value.log_mag, 100.0), 1e-12);
  EXPECT_EQ(r.method, Method::Roi);

  const ChfParams q{1.0, 2.0, 500.0};
  const EvalResult s = sum_region(q, roi_bounds(q, 1e-12, TaylorVariant::T2_5));
  EXPECT_LE(log_rel(s.log_value.log_mag, 500.0 - std::log(500.0)), 1e-12);
  EXPECT_NEAR(s.log_value.log_mag, 493.78539190157781, 1e-10);
}

TEST(SumRegion, MatchesFrozenReference) {
  const ChfParams p{2.0, 3.0, 100.0};
  const RoiBounds b = roi_bounds(p, 1e-12, TaylorVariant::T2_5);
  const EvalResult r = sum_region(p, b);
  EXPECT_LE(log_rel(r.log_value.log_mag, 96.077926658718352), 1e-11);
  EXPECT_EQ(r.terms_summed, r.bounds->n_upper - r.bounds->n_lower + 1);
  EXPECT_EQ(r.terms_summed, b.n_upper - b.n_lower + 1 + r.edge_extension);
  EXPECT_LE(r.edge_extension, 10);
  EXPECT_NEAR(r.value, std::exp(96.077926658718352), 1e-11 * r.value);
}

TEST(SumRegion, WidensAnUnderestimatedWindow) {
  // Small mode with b close to z: the cubic estimate falls short.
  const ChfParams p{0.5, 86.5, 100.0};
  const RoiBounds b = roi_bounds(p, 1e-12, TaylorVariant::T2_5);
  const EvalResult r = sum_region(p, b);
  EXPECT_GT(r.edge_extension, 0);
  EXPECT_GT(r.bounds->n_upper, b.n_upper);
  const SignedLog ref = reference_value(p, 1e-12);
  EXPECT_LE(log_rel(r.log_value.log_mag, ref.log_mag), 1e-12);
}

TEST(SumRegion, RejectsBadWindows) {
  const ChfParams p{2.0, 3.0, 100.0};
  RoiBounds b = roi_bounds(p, 1e-12, TaylorVariant::T2);
  b.n_upper = b.n_lower - 1;
  EXPECT_THROW(sum_region(p, b), ChfError);
  b.n_lower = -1;
  EXPECT_THROW(sum_region(p, b), ChfError);
}

TEST(IncrementCheck, Examples) {
  const EvalResult e = increment_check({1.0, 1.0, 1.0}, 1e-15);
  EXPECT_NEAR(e.value, std::exp(1.0), 1e-14);
  EXPECT_EQ(e.method, Method::IncrementCheck);

  const EvalResult one = increment_check({0.0, 3.0, 7.0}, 1e-12);
  EXPECT_EQ(one.value, 1.0);
  EXPECT_LE(one.terms_summed, 2);

  const EvalResult poly = increment_check({-2.0, 1.5, 3.0}, 1e-12);
  EXPECT_NEAR(poly.value, 1.0 - 2.0 * 3.0 / 1.5 + 2.0 * 9.0 / (2.0 * 1.5 * 2.5), 1e-14);
}

TEST(IncrementCheck, OverflowsOnLargePbCase) {
  try {
    increment_check({1.0, 2.0, 1000.0}, 1e-12);
    FAIL();
  } catch (const ChfError& e) {
    EXPECT_EQ(e.code(), ErrorCode::Overflow);
  }
  try {
    increment_check({1.0, 2.0, 1e4}, 1e-12, 100);
    FAIL();
  } catch (const ChfError& e) {
    EXPECT_TRUE(e.code() == ErrorCode::NoConvergence || e.code() == ErrorCode::Overflow);
  }
}

TEST(Evaluate, Dispatch) {
  const EvalResult small = evaluate({2.0, 3.0, 40.0}, 1e-12);
  EXPECT_EQ(small.method, Method::IncrementCheck);

  const EvalResult big = evaluate({2.0, 3.0, 5000.0}, 1e-12);
  EXPECT_EQ(big.method, Method::Roi);
  EXPECT_LE(log_rel(big.log_value.log_mag, 4992.1757539691410), 1e-13);
  EXPECT_LE(log_rel(big.log_value.log_mag, reference_value({2.0, 3.0, 5000.0}, 1e-12).log_mag), 1e-10);
  EXPECT_EQ(big.value, std::numeric_limits<double>::infinity());

  const EvalResult corner = evaluate({2.0, 300.0, 100.0}, 1e-12);
  EXPECT_EQ(corner.method, Method::IncrementCheck);
}

TEST(Evaluate, FallsBackToWindowWhenPlainSumOverflows) {
  // b > z > a fails the gate, but the plain sum leaves the double range.
  const ChfParams p{900.0, 1000.0, 999.0};
  EXPECT_FALSE(roi_applicable(p));
  const EvalResult r = evaluate(p, 1e-12);
  EXPECT_EQ(r.method, Method::Roi);
  EXPECT_LE(log_rel(r.log_value.log_mag, reference_value(p, 1e-12).log_mag), 1e-12);
}

TEST(Evaluate, NegativeArgumentsUseKummer) {
  const EvalResult r = evaluate({1.0, 2.0, -30.0}, 1e-12);
  EXPECT_TRUE(r.kummer_applied);
  EXPECT_NEAR(r.value, 0.033333333333330214, 1e-12 * 0.0333);

  const EvalResult erf_case = evaluate({0.5, 1.5, -4.0}, 1e-12);
  EXPECT_NEAR(erf_case.value, 0.44104069538121084, 1e-13);
  EXPECT_NEAR(erf_case.value, std::sqrt(std::acos(-1.0)) / 4.0 * std::erf(2.0), 1e-13);

  EXPECT_NEAR(evaluate({1.0, 2.0, -1.0}, 1e-12).value, 0.63212055882855768, 1e-12);
  EXPECT_NEAR(evaluate({3.0, 3.0, -10.0}, 1e-12).value, std::exp(-10.0), 1e-12 * std::exp(-10.0));
}

TEST(Evaluate, ZeroArgumentAndErrors) {
  EXPECT_EQ(evaluate({2.0, 3.0, 0.0}, 1e-12).value, 1.0);
  EXPECT_THROW(evaluate({2.0, 3.0, 1.0}, 0.0), ChfError);
  EXPECT_THROW(evaluate({2.0, -3.0, 1.0}, 1e-12), ChfError);
  // The window around n* = 55 reaches below the sign change at n = 4.
  EXPECT_THROW(evaluate({-3.5, 3.0, 60.0}, 1e-12, TaylorVariant::T2_5, forced(Method::Roi)), ChfError);
  const EvalResult far = evaluate({-3.5, 3.0, 500.0}, 1e-12, TaylorVariant::T2_5, forced(Method::Roi));
  EXPECT_LE(log_rel(far.log_value.log_mag, reference_value({-3.5, 3.0, 500.0}, 1e-12).log_mag), 1e-12);
}

TEST(EvaluateProperty, MethodsAgree) {
  double worst = 0.0;
  for (double z : {60.0, 150.0, 300.0, 600.0}) {
    for (double a : {1.0, 2.0, 10.0, 50.0}) {
      for (double b : {0.5, 2.0, 10.0, 40.0}) {
        const ChfParams p{a, b, z};
        const double eps = 1e-10;
        EvalResult roi;
        try {
          roi = evaluate(p, eps, TaylorVariant::T2_5, forced(Method::Roi));
        } catch (const PrecisionBelowMinimumError&) {
          roi = evaluate(p, eps, TaylorVariant::T1_5, forced(Method::Roi));
        }
        EvalResult ic;
        try {
          ic = increment_check(p, eps);
        } catch (const ChfError& e) {
          ASSERT_EQ(e.code(), ErrorCode::Overflow);
          continue;
        }
        worst = std::max(worst, std::abs(roi.value - ic.value) / std::abs(ic.value));
      }
    }
  }
  EXPECT_LE(worst, 10.0 * 1e-10);
}

TEST(EvaluateProperty, TighterPrecisionStaysWithinLooser) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const ChfParams p{0.5 + 50.0 * u(rng), 0.5 + 50.0 * u(rng), 60.0 + 3000.0 * u(rng)};
    const double loose = evaluate(p, 1e-6).log_value.log_mag;
    const double tight = evaluate(p, 1e-13).log_value.log_mag;
    EXPECT_LE(std::abs(loose - tight), 1e-6);
  }
}

TEST(EvaluateProperty, KummerConsistency) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double a = 0.1 + 30.0 * u(rng), b = 0.1 + 30.0 * u(rng), z = 1.0 + 299.0 * u(rng);
    const SignedLog lhs = evaluate({a, b, -z}, 1e-12).log_value;
    const SignedLog rhs = evaluate({b - a, b, z}, 1e-12).log_value;
    ASSERT_EQ(lhs.sign, rhs.sign);
    EXPECT_LE(log_rel(lhs.log_mag, rhs.log_mag - z), 1e-11) << a << " " << b << " " << z;
    // With b > a the reflected series has positive terms and no cancellation.
    if (b > a) {
      const SignedLog ref = reference_value({a, b, -z}, 1e-12);
      ASSERT_EQ(lhs.sign, ref.sign);
      EXPECT_LE(log_rel(lhs.log_mag, ref.log_mag), 1e-11) << a << " " << b << " " << z;
    }
  }
}

TEST(EvaluateProperty, LinearAndLogValuesAgree) {
  for (double z : {5.0, 55.0, 300.0}) {
    const EvalResult r = evaluate({1.5, 2.5, z}, 1e-12);
    EXPECT_NEAR(r.value, r.log_value.sign * std::exp(r.log_value.log_mag), 1e-12 * r.value);
    EXPECT_GE(r.terms_summed, 1);
  }
}

TEST(EvaluateProperty, RoiTermRangeNearPrecision) {
  for (double gamma : {100.0, 1000.0, 1e4, 1e5}) {
    for (double alpha : {0.5, 1.0, 5.0}) {
      for (double beta : {0.5, 1.0, 5.0}) {
        const ChfParams p{beta, alpha + beta, gamma};
        const EvalResult r = evaluate(p, 1e-12, TaylorVariant::T2_5, forced(Method::Roi));
        EXPECT_GT(r.term_range_log, 0.8 * 27.6);
        EXPECT_LT(r.term_range_log, std::log(1e21));
      }
    }
  }
}
