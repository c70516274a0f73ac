#include "ineqcert/errors.hpp"
#include "ineqcert/expr.hpp"
#include "ineqcert/remez.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace ineqcert;
using testing_support::R;
using testing_support::rel_diff;

namespace {

class RemezTest : public ::testing::Test {
 protected:
  Precision p{50};
  PrecisionScope scope{p};
  MinimaxSettings settings;

  RealFunction fn(const std::string& text) {
    auto e = std::make_shared<Expression>(parse(text));
    return [e, this](const Real& x) { return evaluate(*e, x, p); };
  }
};

// Oracle: brute force over (intercept, slope). max_x |x^2 - c0 - c1 x| is convex
// in (c0, c1), so nested ternary search over a dense x grid finds its minimum.
double brute_force_linear_minimax(double& c0_out, double& c1_out) {
  std::vector<double> xs;
  for (int i = 0; i <= 4000; ++i) xs.push_back(-1.0 + i / 2000.0);
  auto err = [&](double c0, double c1) {
    double worst = 0;
    for (double x : xs) worst = std::max(worst, std::abs(x * x - c0 - c1 * x));
    return worst;
  };
  auto best_c0 = [&](double c1, double& value) {
    double lo = -2, hi = 2;
    for (int it = 0; it < 100; ++it) {
      const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      if (err(m1, c1) < err(m2, c1)) hi = m2; else lo = m1;
    }
    value = err((lo + hi) / 2, c1);
    return (lo + hi) / 2;
  };
  double lo = -2, hi = 2, v1 = 0, v2 = 0;
  for (int it = 0; it < 100; ++it) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    best_c0(m1, v1);
    best_c0(m2, v2);
    if (v1 < v2) hi = m2; else lo = m1;
  }
  c1_out = (lo + hi) / 2;
  double value = 0;
  c0_out = best_c0(c1_out, value);
  return value;
}

TEST_F(RemezTest, InitialNodes) {
  auto n1 = initial_nodes(-1, 1, 1);
  ASSERT_EQ(n1.size(), 3u);
  EXPECT_EQ(n1[0], -1);
  EXPECT_EQ(n1[1], 0);
  EXPECT_EQ(n1[2], 1);
  auto n2 = initial_nodes(0, 1, 1);
  EXPECT_EQ(n2[1], R("0.5"));
  auto n3 = initial_nodes(-1, 1, 2);
  ASSERT_EQ(n3.size(), 4u);
  EXPECT_LT(abs(n3[1] + R("0.5")), p.epsilon(2));
  EXPECT_LT(abs(n3[2] - R("0.5")), p.epsilon(2));
}

TEST_F(RemezTest, LevelledSystemExamples) {
  const std::vector<Real> sym{-1, 0, 1};
  const auto sq = solve_levelled_system(fn("x^2"), sym, -1, 1, p);
  EXPECT_LT(abs(sq.levelled_error - R("0.5")), p.epsilon(3));
  EXPECT_LT(abs(sq.polynomial(R("0.3")) - R("0.5")), p.epsilon(3));

  const std::vector<Real> two{R("0.2"), R("0.7")};
  const auto c = solve_levelled_system(fn("7"), two, 0, 1, p);
  EXPECT_LT(abs(c.levelled_error), p.epsilon(3));
  EXPECT_LT(abs(c.polynomial(R("0.9")) - 7), p.epsilon(3));

  const std::vector<Real> unit{0, R("0.5"), 1};
  const auto id = solve_levelled_system(fn("x"), unit, 0, 1, p);
  EXPECT_LT(abs(id.levelled_error), p.epsilon(3));
  EXPECT_LT(abs(id.polynomial(R("0.8")) - R("0.8")), p.epsilon(3));
}

TEST_F(RemezTest, CoincidentNodesAreSingular) {
  const std::vector<Real> bad{0, R("0.5"), R("0.5")};
  EXPECT_THROW(solve_levelled_system(fn("exp(x)"), bad, 0, 1, p), SingularSystemError);
}

TEST_F(RemezTest, ExchangeFixedPointForSquare) {
  const std::vector<Real> nodes{-1, 0, 1};
  const Polynomial half({R("0.5"), 0}, -1, 1);
  const auto ex = exchange(fn("x^2"), half, nodes, p);
  ASSERT_EQ(ex.nodes.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_LT(abs(ex.nodes[i] - nodes[i]), R("1e-10"));
}

TEST_F(RemezTest, ExchangeMovesInteriorNodeForExp) {
  const auto nodes = initial_nodes(0, 1, 1);
  const auto sol = solve_levelled_system(fn("exp(x)"), nodes, 0, 1, p);
  const auto ex = exchange(fn("exp(x)"), sol.polynomial, nodes, p);
  const Real target = log(exp(Real(1)) - 1);
  EXPECT_LT(abs(ex.nodes[1] - target), R("1e-6"));
}

TEST_F(RemezTest, SquareAgainstBruteForce) {
  double c0 = 0, c1 = 0;
  const double oracle = brute_force_linear_minimax(c0, c1);
  EXPECT_NEAR(oracle, 0.5, 1e-6);
  const auto r = minimax(fn("x^2"), -1, 1, 1, settings, p);
  EXPECT_NEAR(r.delta_hat.convert_to<double>(), oracle, 1e-6);
  EXPECT_LT(abs(r.delta_hat - R("0.5")), R("1e-10"));
  const auto mono = r.polynomial.to_monomial();
  EXPECT_NEAR(mono[0].convert_to<double>(), c0, 1e-6);
  EXPECT_NEAR(mono[1].convert_to<double>(), c1, 1e-6);
  EXPECT_LT(abs(mono[0] - R("0.5")), R("1e-10"));
  EXPECT_LT(abs(mono[1]), R("1e-10"));
  ASSERT_EQ(r.nodes.size(), 3u);
  EXPECT_LT(abs(r.nodes[0] + 1), R("1e-8"));
  EXPECT_LT(abs(r.nodes[1]), R("1e-8"));
  EXPECT_LT(abs(r.nodes[2] - 1), R("1e-8"));
}

// Closed form for a convex g on [0, 1] at degree 1: slope s = g(1) - g(0),
// interior node t with g'(t) = s, delta = (g(0) - g(t) + s t) / 2.
TEST_F(RemezTest, ExpClosedForm) {
  const Real e1 = exp(Real(1));
  const Real slope = e1 - 1;
  const Real t = log(slope);
  const Real delta = (1 - exp(t) + slope * t) / 2;
  const auto r = minimax(fn("exp(x)"), 0, 1, 1, settings, p);
  const auto mono = r.polynomial.to_monomial();
  EXPECT_LT(abs(mono[1] - slope), R("1e-10"));
  EXPECT_LT(abs(r.nodes[1] - t), R("1e-8"));
  EXPECT_LT(rel_diff(r.delta_hat, abs(delta)), 1e-10);
}

TEST_F(RemezTest, EquioscillationSuite) {
  for (const char* g : {"exp(x)", "sin(x)", "x*arcsin(x/2)"}) {
    Real previous = -1;
    for (int k = 1; k <= 6; ++k) {
      const auto r = minimax(fn(g), 0, 1, k, settings, p);
      const auto v = verify_equioscillation(r, fn(g), R("1e-6"), p);
      EXPECT_TRUE(v.passed) << g << " k=" << k << ": " << v.reason;
      EXPECT_LE(r.iterations, 12) << g << " k=" << k;
      EXPECT_EQ(r.nodes.size(), static_cast<std::size_t>(k + 2));
      for (std::size_t i = 1; i < r.nodes.size(); ++i) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
      for (std::size_t i = 1; i < r.node_residuals.size(); ++i) {
        EXPECT_LT(r.node_residuals[i - 1] * r.node_residuals[i], 0) << g << " k=" << k;
      }
      EXPECT_LE(r.lower_bound, r.delta_hat);
      EXPECT_LE(r.delta_hat, r.upper_bound);
      EXPECT_LE((r.upper_bound - r.lower_bound) / r.upper_bound, settings.tol);
      if (previous >= 0) EXPECT_LE(r.delta_hat, previous) << g << " k=" << k;
      previous = r.delta_hat;
    }
  }
}

TEST_F(RemezTest, DegreeMonotonicityFromZero) {
  Real previous = -1;
  for (int k = 0; k <= 6; ++k) {
    const auto r = minimax(fn("sin(x)"), 0, 1, k, settings, p);
    if (previous >= 0) EXPECT_LE(r.delta_hat, previous) << k;
    previous = r.delta_hat;
  }
}

TEST_F(RemezTest, ExactPolynomial) {
  const auto r = minimax(fn("1 - 2*x + 3*x^3"), -1, 2, 3, settings, p);
  EXPECT_TRUE(r.exact);
  EXPECT_LE(r.delta_hat, settings.tol * 60);
  for (const char* xs : {"-0.9", "0.13", "1.5", "1.99"}) {
    const Real x = R(xs);
    EXPECT_LT(abs(r.polynomial(x) - (1 - 2 * x + 3 * x * x * x)), R("1e-20"));
  }
  EXPECT_TRUE(verify_equioscillation(r, fn("1 - 2*x + 3*x^3"), R("1e-6"), p).passed);
}

TEST_F(RemezTest, ConstantAtDegreeZero) {
  const auto r = minimax(fn("4"), 0, 1, 0, settings, p);
  EXPECT_EQ(r.delta_hat, 0);
}

TEST_F(RemezTest, PositiveScalingEquivariance) {
  const auto base = minimax(fn("exp(x)*cos(x)"), 0, 1, 3, settings, p);
  const auto scaled = minimax(fn("2.5*exp(x)*cos(x)"), 0, 1, 3, settings, p);
  EXPECT_LT(rel_diff(scaled.delta_hat, R("2.5") * base.delta_hat), 1e-20);
  for (std::size_t j = 0; j < base.polynomial.coefficients().size(); ++j) {
    EXPECT_LT(rel_diff(scaled.polynomial.coefficients()[j], R("2.5") * base.polynomial.coefficients()[j]),
              1e-20);
  }
}

TEST_F(RemezTest, AffineDomainEquivariance) {
  // g(x) = sin on [0, 1] versus sin((y - 3) / 2) on [3, 5].
  const auto base = minimax(fn("sin(x)"), 0, 1, 3, settings, p);
  const auto moved = minimax(fn("sin((x-3)/2)"), 3, 5, 3, settings, p);
  EXPECT_LT(rel_diff(base.delta_hat, moved.delta_hat), 1e-20);
}

TEST_F(RemezTest, DoubledGridSelfConvergence) {
  MinimaxSettings dense = settings;
  dense.grid_multiplier = 128;
  const auto r = minimax(fn("x*arcsin(x/2)"), 0, 1, 4, settings, p);
  const auto d = minimax(fn("x*arcsin(x/2)"), 0, 1, 4, dense, p);
  EXPECT_LT(rel_diff(r.delta_hat, d.delta_hat), 1e-10);
}

TEST_F(RemezTest, VerifierCatchesPerturbedNode) {
  auto r = minimax(fn("exp(x)"), 0, 1, 2, settings, p);
  r.nodes[2] += R("0.05");
  const auto v = verify_equioscillation(r, fn("exp(x)"), R("1e-6"), p);
  EXPECT_FALSE(v.passed);
  ASSERT_TRUE(v.offending_node.has_value());
  EXPECT_EQ(*v.offending_node, 2);
}

TEST_F(RemezTest, SquareResidualsAlternate) {
  const auto r = minimax(fn("x^2"), -1, 1, 1, settings, p);
  const auto v = verify_equioscillation(r, fn("x^2"), R("1e-6"), p);
  ASSERT_TRUE(v.passed);
  ASSERT_EQ(v.residuals.size(), 3u);
  EXPECT_LT(abs(v.residuals[0] - R("0.5")), R("1e-10"));
  EXPECT_LT(abs(v.residuals[1] + R("0.5")), R("1e-10"));
  EXPECT_LT(abs(v.residuals[2] - R("0.5")), R("1e-10"));
}

TEST_F(RemezTest, RejectsBadInput) {
  EXPECT_THROW(minimax(fn("x"), 1, 0, 1, settings, p), ConfigError);
  EXPECT_THROW(minimax(fn("x"), 0, 1, -1, settings, p), ConfigError);
  MinimaxSettings tiny = settings;
  tiny.tol = R("1e-45");
  EXPECT_THROW(minimax(fn("x"), 0, 1, 1, tiny, p), ConfigError);
}

}  // namespace
