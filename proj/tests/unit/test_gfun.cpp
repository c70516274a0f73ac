#include "ineqcert/errors.hpp"
#include "ineqcert/gfun.hpp"
#include "ineqcert/quad.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace ineqcert;
using testing_support::R;
using testing_support::rel_diff;

namespace {

const char* kArcsinBound =
    "(pi*(2-sqrt(2))/(pi-2*sqrt(2)))*(sqrt(1+x)-sqrt(1-x)) / "
    "((sqrt(2)*(4-pi)/(pi-2*sqrt(2))) + sqrt(1+x) + sqrt(1-x)) - arcsin(x)";

class GfunTest : public ::testing::Test {
 protected:
  Precision p{50};
  PrecisionScope scope{p};
};

TEST_F(GfunTest, TaylorProductOfRoots) {
  const auto l = endpoint_limits_taylor(parse("x*(1-x)"), 0, 1, 1, 1, p);
  EXPECT_LT(rel_diff(l.alpha, 1), 1e-45);
  EXPECT_LT(rel_diff(l.beta, 1), 1e-45);
  EXPECT_EQ(l.alpha_method, LimitMethod::kTaylor);
}

TEST_F(GfunTest, TaylorIdentity) {
  const auto l = endpoint_limits_taylor(parse("x"), 0, 1, 1, 0, p);
  EXPECT_LT(rel_diff(l.alpha, 1), 1e-45);
  EXPECT_LT(rel_diff(l.beta, 1), 1e-45);
}

TEST_F(GfunTest, TaylorScalesWithSegment) {
  // f = (x - 1)(3 - x)^2 on [1, 3]: alpha = f'(1) / (3-1)^2 = 4 / 4, beta = f''(3)/2 / 2 = 1.
  const auto l = endpoint_limits_taylor(parse("(x-1)*(3-x)^2"), 1, 3, 1, 2, p);
  EXPECT_LT(rel_diff(l.alpha, 1), 1e-45);
  EXPECT_LT(rel_diff(l.beta, 1), 1e-45);
}

TEST_F(GfunTest, TaylorRejectsWrongMultiplicity) {
  try {
    endpoint_limits_taylor(parse("1+x"), 0, 1, 1, 0, p);
    FAIL();
  } catch (const LimitError& e) {
    EXPECT_EQ(e.kind(), LimitError::Kind::kMultiplicity);
    EXPECT_EQ(e.endpoint(), Endpoint::kLeft);
  }
}

TEST_F(GfunTest, TaylorDomainErrorPropagates) {
  EXPECT_THROW(endpoint_limits_taylor(parse("sqrt(1-x)"), 0, 1, 0, 1, p), DomainError);
}

TEST_F(GfunTest, KurepaFixtureLimits) {
  const Expression f = parse("kurepa_deriv(1, 0)*x - kurepa(x)");
  const auto taylor = endpoint_limits_taylor(f, 0, 1, 2, 0, p);
  const auto numeric = endpoint_limits_numeric(f, 0, 1, 2, 0, p);
  const Real k2 = quad::kurepa_derivative(0, 2, p).value;
  const Real k1 = quad::kurepa_derivative(0, 1, p).value;
  EXPECT_LT(rel_diff(taylor.alpha, -k2 / 2), 1e-40);
  EXPECT_LT(rel_diff(taylor.beta, k1 - 1), 1e-40);
  EXPECT_GT(taylor.alpha, 0);
  EXPECT_GT(taylor.beta, 0);
  EXPECT_LT(rel_diff(taylor.alpha, numeric.alpha), 1e-6);
  EXPECT_LT(rel_diff(taylor.beta, numeric.beta), 1e-6);
}

TEST_F(GfunTest, NumericExactPowers) {
  const auto l1 = endpoint_limits_numeric(parse("x^(3/2)"), 0, 1, R("1.5"), 0, p);
  EXPECT_LT(rel_diff(l1.alpha, 1), 1e-8);
  EXPECT_LT(rel_diff(l1.beta, 1), 1e-8);
  EXPECT_EQ(l1.alpha_method, LimitMethod::kNumeric);
  const auto l2 = endpoint_limits_numeric(parse("sqrt(x)*(1-x)"), 0, 1, R("0.5"), 1, p);
  EXPECT_LT(rel_diff(l2.alpha, 1), 1e-8);
  EXPECT_LT(rel_diff(l2.beta, 1), 1e-8);
}

TEST_F(GfunTest, NumericDetectsDivergence) {
  try {
    endpoint_limits_numeric(parse("x"), 0, 1, 2, 0, p);
    FAIL();
  } catch (const LimitError& e) {
    EXPECT_EQ(e.kind(), LimitError::Kind::kDivergence);
    EXPECT_EQ(e.endpoint(), Endpoint::kLeft);
    EXPECT_NEAR(e.hint_exponent(), -1.0, 0.05);
  }
}

TEST_F(GfunTest, NumericDetectsZeroLimit) {
  try {
    endpoint_limits_numeric(parse("x^2*(2-x)"), 0, 1, 1, 0, p);
    FAIL();
  } catch (const LimitError& e) {
    EXPECT_EQ(e.kind(), LimitError::Kind::kZeroLimit);
    EXPECT_NEAR(e.hint_exponent(), 1.0, 0.05);
  }
}

TEST_F(GfunTest, NumericHandlesSqrtTypeEndpoint) {
  // f ~ 0.0066 sqrt(1 - x) at b = 1; oracle is f(1 - h)/sqrt(h) at h = 1e-40 (80 digits).
  const Expression f = parse(kArcsinBound);
  const auto l = endpoint_limits_numeric(f, 0, 1, 3, R("0.5"), p);
  const Precision p80(80);
  PrecisionScope wide(p80);
  const Real h = R("1e-40");
  const Real oracle = evaluate(f, 1 - h, p80) / (pow(1 - h, 3) * sqrt(h));
  EXPECT_LT(rel_diff(l.beta, oracle), 1e-8);
}

TEST_F(GfunTest, AutoFallsBackToNumericPerEndpoint) {
  const auto l = endpoint_limits(parse("x*sqrt(1-x)"), 0, 1, 1, R("0.5"), p);
  EXPECT_EQ(l.alpha_method, LimitMethod::kTaylor);
  EXPECT_EQ(l.beta_method, LimitMethod::kNumeric);
  EXPECT_LT(rel_diff(l.alpha, 1), 1e-40);
  EXPECT_LT(rel_diff(l.beta, 1), 1e-8);
}

TEST_F(GfunTest, GEqualsLimitsAtEndpoints) {
  const Expression f = parse("x*(1-x)*(2+x)");
  const auto l = endpoint_limits(f, 0, 1, 1, 1, p);
  const GFunction g = build_g(f, 0, 1, 1, 1, l.alpha, l.beta, p);
  EXPECT_EQ(g(0), l.alpha);
  EXPECT_EQ(g(1), l.beta);
}

TEST_F(GfunTest, ExactCancellationGivesOne) {
  const Expression f = parse("x*(1-x)");
  const GFunction g = build_g(f, 0, 1, 1, 1, 1, 1, p);
  for (int i = 0; i <= 50; ++i) {
    EXPECT_LT(abs(g(Real(i) / 50) - 1), R("1e-30")) << i;
  }
  EXPECT_LT(abs(g(R("1e-12")) - 1), R("1e-30"));
  EXPECT_LT(abs(g(1 - R("1e-12")) - 1), R("1e-30"));
}

TEST_F(GfunTest, ArcsinBoundQuotientAtHalf) {
  // The fixture's own n = m = 1 limits are degenerate; g(1/2) does not depend on them.
  const Expression f = parse(kArcsinBound);
  const GFunction g = build_g(f, 0, 1, 1, 1, 1, 1, p);
  const Real half = R("0.5");
  EXPECT_LT(rel_diff(g(half), evaluate(f, half, p) / (half * half)), 1e-45);
}

TEST_F(GfunTest, EndpointContinuity) {
  const Expression f = parse("sin(x)*(2-x)^2*exp(x)");
  const auto l = endpoint_limits(f, 0, 2, 1, 2, p);
  const GFunction g = build_g(f, 0, 2, 1, 2, l.alpha, l.beta, p);
  Real prev_left = -1, prev_right = -1;
  for (int j = 6; j <= 10; ++j) {
    const Real h = 2 * pow(Real(10), -j);
    const Real dl = abs(g(h) - l.alpha);
    const Real dr = abs(g(2 - h) - l.beta);
    if (j > 6) {
      EXPECT_LE(dl, prev_left) << j;
      EXPECT_LE(dr, prev_right) << j;
    }
    prev_left = dl;
    prev_right = dr;
  }
  EXPECT_LE(prev_left, R("1e-6") * abs(l.alpha));
  EXPECT_LE(prev_right, R("1e-6") * abs(l.beta));
}

TEST_F(GfunTest, BuildRejectsZeroLimit) {
  EXPECT_THROW(build_g(parse("x"), 0, 1, 1, 0, 0, 1, p), ConfigError);
}

TEST_F(GfunTest, DenominatorPositiveInside) {
  const GFunction g = build_g(parse("x*(1-x)"), 0, 1, R("1.5"), R("0.5"), 1, 1, p);
  for (int i = 1; i < 100; ++i) EXPECT_GT(g.denominator(Real(i) / 100), 0);
}

TEST_F(GfunTest, SignEquivalence) {
  const GFunction g1 = build_g(parse("x*(1-x)"), 0, 1, 1, 1, 1, 1, p);
  EXPECT_TRUE(sign_equivalence_check(g1, 100).violations.empty());
  const GFunction g2 = build_g(parse("-x"), 0, 1, 1, 0, -1, -1, p);
  const SignReport r2 = sign_equivalence_check(g2, 100);
  EXPECT_EQ(r2.samples, 100);
  EXPECT_TRUE(r2.violations.empty());
  const GFunction g3 = build_g(parse(kArcsinBound), 0, 1, 1, 1, 1, 1, p);
  EXPECT_TRUE(sign_equivalence_check(g3, 256).violations.empty());
}

}  // namespace
