#include "ineqcert/errors.hpp"
#include "ineqcert/quad.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace ineqcert;
using testing_support::R;
using testing_support::rel_diff;

namespace {

class QuadTest : public ::testing::Test {
 protected:
  Precision p{50};
  PrecisionScope scope{p};
};

TEST_F(QuadTest, GaussLegendreIntegratesPolynomialsExactly) {
  const auto& rule = quad::gauss_legendre(12);
  ASSERT_EQ(rule.nodes.size(), 12u);
  // Degree 2n - 1 = 23 is exact; compare with int_{-1}^{1} x^k dx.
  for (int k = 0; k <= 23; ++k) {
    Real sum = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * pow(rule.nodes[i], k);
    const Real exact = k % 2 == 0 ? Real(Real(2) / (k + 1)) : Real(0);
    EXPECT_LT(abs(sum - exact), R("1e-48")) << k;
  }
}

TEST_F(QuadTest, KurepaAtZeroVanishes) {
  const auto r = quad::kurepa(0, p);
  EXPECT_EQ(r.value, 0);
}

TEST_F(QuadTest, KurepaAtOneIsOne) {
  const auto r = quad::kurepa(1, p);
  EXPECT_LT(abs(r.value - 1), R("1e-40"));
  EXPECT_LE(r.error_bound, p.epsilon(10));
  EXPECT_GT(r.nodes_used, 0);
  EXPECT_GT(r.tail_cutoff, 0);
}

// K(n) is the left factorial 0! + 1! + ... + (n-1)!.
TEST_F(QuadTest, KurepaAtIntegersIsLeftFactorial) {
  Real left = 0;
  Real fact = 1;
  for (int n = 1; n <= 5; ++n) {
    left += fact;
    fact *= n;
    EXPECT_LT(rel_diff(quad::kurepa(n, p).value, left), 1e-40) << n;
  }
}

TEST_F(QuadTest, KurepaAtHalfIsSelfConsistent) {
  const auto base = quad::kurepa(R("0.5"), p);
  EXPECT_GT(base.value, 0);
  EXPECT_LT(base.value, 1);
  quad::QuadratureConfig doubled;
  doubled.panel_nodes = 2 * (20 + p.decimal_digits() / 3);
  doubled.tail_scale = 2.0;
  const auto fine = quad::kurepa(R("0.5"), p, doubled);
  EXPECT_LT(abs(base.value - fine.value), R("1e-20"));
  EXPECT_LE(abs(base.value - fine.value), 2 * std::max(base.error_bound, fine.error_bound) + p.epsilon(5));
}

TEST_F(QuadTest, DerivativeValuesAtZero) {
  const auto d1 = quad::kurepa_derivative(0, 1, p);
  EXPECT_LT(std::abs((d1.value - R("1.432205735")).convert_to<double>()), 5e-10);
  EXPECT_LT(quad::kurepa_derivative(0, 2, p).value, 0);
  EXPECT_GT(quad::kurepa_derivative(0, 3, p).value, 0);
}

TEST_F(QuadTest, FirstAndThirdDerivativesPositive) {
  for (const char* x : {"0", "0.25", "0.5", "0.93", "1", "2.5"}) {
    EXPECT_GT(quad::kurepa_derivative(R(x), 1, p).value, 0) << x;
    EXPECT_GT(quad::kurepa_derivative(R(x), 3, p).value, 0) << x;
  }
}

// Oracle: central difference of the next-lower order, h = 1e-10.
TEST_F(QuadTest, DerivativesMatchFiniteDifferences) {
  const Real h = R("1e-10");
  for (const char* xs : {"0.3", "0.8", "1.7"}) {
    const Real x = R(xs);
    const Real fd0 = (quad::kurepa(x + h, p).value - quad::kurepa(x - h, p).value) / (2 * h);
    EXPECT_LT(rel_diff(quad::kurepa_derivative(x, 1, p).value, fd0), 1e-16) << xs;
    for (int order = 2; order <= 3; ++order) {
      const Real fd = (quad::kurepa_derivative(x + h, order - 1, p).value -
                       quad::kurepa_derivative(x - h, order - 1, p).value) /
                      (2 * h);
      EXPECT_LT(rel_diff(quad::kurepa_derivative(x, order, p).value, fd), 1e-16)
          << xs << " order " << order;
    }
  }
}

TEST_F(QuadTest, DerivativeSelfConvergence) {
  quad::QuadratureConfig doubled;
  doubled.panel_nodes = 2 * (20 + p.decimal_digits() / 3);
  doubled.tail_scale = 2.0;
  for (int order = 1; order <= 3; ++order) {
    const auto base = quad::kurepa_derivative(R("0.6"), order, p);
    const auto fine = quad::kurepa_derivative(R("0.6"), order, p, doubled);
    EXPECT_LE(abs(base.value - fine.value), 2 * std::max(base.error_bound, fine.error_bound) + p.epsilon(5))
        << order;
  }
}

TEST_F(QuadTest, KurepaIncreasingOnUnitInterval) {
  Real previous = -1;
  for (int i = 0; i <= 100; ++i) {
    const Real x = Real(i) / 100;
    const Real v = quad::kurepa(x, p).value;
    EXPECT_GT(v, previous) << i;
    previous = v;
  }
}

TEST_F(QuadTest, InflectionPoint) {
  const Real c = quad::find_inflection(p);
  EXPECT_LT(std::abs((c - R("0.929875685")).convert_to<double>()), 5e-9);
  const Real k1 = quad::kurepa_derivative(0, 1, p).value;
  EXPECT_LT(std::abs((k1 * c - R("1.331773289")).convert_to<double>()), 1e-8);
  EXPECT_LT(quad::kurepa_derivative(c - R("1e-9"), 2, p).value, 0);
  EXPECT_GT(quad::kurepa_derivative(c + R("1e-9"), 2, p).value, 0);
  EXPECT_LT(quad::kurepa_derivative(c - R("0.1"), 2, p).value, 0);
  EXPECT_GT(quad::kurepa_derivative(c + R("0.05"), 2, p).value, 0);
}

// Oracle: mpmath quad + findroot at 30 digits on the K'' integral.
TEST_F(QuadTest, InflectionMatchesIndependentQuadrature) {
  EXPECT_LT(abs(quad::find_inflection(p) - R("0.929875684808721652")), R("1e-11"));
}

TEST_F(QuadTest, RejectsBadArguments) {
  EXPECT_THROW(quad::kurepa(-1, p), DomainError);
  EXPECT_THROW(quad::kurepa_derivative(R("0.5"), 0, p), Error);
  EXPECT_THROW(quad::kurepa_derivative(R("0.5"), quad::kMaxDerivativeOrder + 1, p), Error);
}

TEST_F(QuadTest, HigherPrecisionAgrees) {
  const Real at50 = quad::kurepa_derivative(0, 1, p).value;
  const Precision p80(80);
  PrecisionScope wide(p80);
  const auto at80 = quad::kurepa_derivative(0, 1, p80);
  EXPECT_LE(at80.error_bound, p80.epsilon(10));
  EXPECT_LT(abs(at50 - at80.value), R("1e-39"));
}

}  // namespace
