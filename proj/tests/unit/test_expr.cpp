#include "ineqcert/errors.hpp"
#include "ineqcert/expr.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace ineqcert;
using testing_support::R;
using testing_support::rel_diff;

namespace {

class ExprTest : public ::testing::Test {
 protected:
  Precision p{50};
  PrecisionScope scope{p};

  Real eval(const std::string& text, const Real& x) { return evaluate(parse(text), x, p); }
};

TEST_F(ExprTest, ParsesFunctionCall) {
  const Expression e = parse("arcsin(x)");
  ASSERT_EQ(e.root().kind, NodeKind::kUnary);
  EXPECT_EQ(e.root().unary, UnaryOp::kArcsin);
  EXPECT_EQ(e.root().children.at(0)->kind, NodeKind::kVariable);
}

TEST_F(ExprTest, ParsesDifferenceOfRoots) {
  const Expression e = parse("sqrt(1+x) - sqrt(1-x)");
  const Node& r = e.root();
  ASSERT_EQ(r.kind, NodeKind::kBinary);
  EXPECT_EQ(r.binary, BinaryOp::kSub);
  const Node& lhs = *r.children[0];
  const Node& rhs = *r.children[1];
  EXPECT_EQ(lhs.unary, UnaryOp::kSqrt);
  EXPECT_EQ(rhs.unary, UnaryOp::kSqrt);
  EXPECT_EQ(lhs.children[0]->binary, BinaryOp::kAdd);
  EXPECT_EQ(rhs.children[0]->binary, BinaryOp::kSub);
}

TEST_F(ExprTest, UnbalancedParenthesisReportsPosition) {
  try {
    parse("(1+x");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST_F(ExprTest, UnknownIdentifier) {
  EXPECT_THROW(parse("foo(x)"), UnknownIdentifierError);
  EXPECT_THROW(parse("x + y"), UnknownIdentifierError);
}

TEST_F(ExprTest, RejectsMalformedInput) {
  for (const char* bad : {"", "x +", "2 ** x", "sqrt x", "1..2", "x^x", "kurepa_deriv(0, x)",
                          "kurepa_deriv(9, x)", "kurepa_deriv(x, 1)", "()"}) {
    EXPECT_THROW(parse(bad), ParseError) << bad;
  }
}

TEST_F(ExprTest, PrecedenceAndAssociativity) {
  EXPECT_EQ(eval("2+3*4", 0), 14);
  EXPECT_EQ(eval("2^3^2", 0), 512);
  EXPECT_EQ(eval("-2^2", 0), -4);
  EXPECT_EQ(eval("8/4/2", 0), 1);
  EXPECT_EQ(eval("10-4-3", 0), 3);
}

TEST_F(ExprTest, ArcsinValues) {
  EXPECT_EQ(eval("arcsin(x)", 0), 0);
  EXPECT_LT(rel_diff(eval("arcsin(x)", 1), pi_constant() / 2), 1e-48);
}

TEST_F(ExprTest, KurepaAtOne) { EXPECT_LT(rel_diff(eval("kurepa(x)", 1), 1), 1e-45); }

TEST_F(ExprTest, NamedConstants) {
  EXPECT_LT(rel_diff(eval("pi", 0), pi_constant()), 1e-49);
  EXPECT_LT(rel_diff(eval("e", 0), exp(Real(1))), 1e-49);
  EXPECT_LT(rel_diff(eval("sqrt2*sqrt2", 0), 2), 1e-49);
}

TEST_F(ExprTest, DomainErrors) {
  EXPECT_THROW(eval("arcsin(x)", R("1.5")), DomainError);
  EXPECT_THROW(eval("log(x)", 0), DomainError);
  EXPECT_THROW(eval("log(x)", -1), DomainError);
  EXPECT_THROW(eval("sqrt(x)", -1), DomainError);
  EXPECT_THROW(eval("1/x", 0), DomainError);
  EXPECT_THROW(eval("kurepa(x)", -1), DomainError);
}

TEST_F(ExprTest, PrintRoundTripIsStructurallyEqual) {
  for (const char* text :
       {"arcsin(x)", "sqrt(1+x) - sqrt(1-x)", "-x^2/3 + 1.25*x - 7", "kurepa_deriv(2, x)*kurepa(x)",
        "exp(-x)*cos(pi*x) + arctan(x)/sqrt2", "(x+1)^(3/2) - x^(-1)", "log(1+x^2)*sin(e*x)"}) {
    const Expression e = parse(text);
    const Expression again = parse(print(e));
    EXPECT_TRUE(structurally_equal(e, again)) << text << " -> " << print(e);
    EXPECT_EQ(print(e), print(again));
  }
}

TEST_F(ExprTest, DerivativeOfArcsin) {
  const Expression d = differentiate(parse("arcsin(x)"), 1);
  const Expression expected = parse("1/sqrt(1 - x^2)");
  for (const char* x : {"0", "0.3", "-0.7", "0.99"}) {
    EXPECT_LT(rel_diff(evaluate(d, R(x), p), evaluate(expected, R(x), p)), 1e-45) << x;
  }
}

TEST_F(ExprTest, SecondDerivativeOfSquareIsTwo) {
  const Expression d2 = differentiate(parse("x*x"), 2);
  EXPECT_EQ(d2.root().kind, NodeKind::kConstant);
  EXPECT_EQ(evaluate(d2, R("0.37"), p), 2);
}

TEST_F(ExprTest, KurepaDerivativeNode) {
  const Expression d = differentiate(parse("kurepa(x)"), 1);
  EXPECT_EQ(d.root().kind, NodeKind::kKurepaDeriv);
  EXPECT_EQ(d.root().order, 1);
  EXPECT_LT(std::abs((evaluate(d, 0, p) - R("1.432205735")).convert_to<double>()), 5e-10);
}

// Oracle: central finite differences, h = 1e-12 at 50 digits, error O(h^2).
TEST_F(ExprTest, DerivativesMatchCentralDifferences) {
  const Real h = R("1e-12");
  for (const char* text :
       {"arcsin(x)", "sqrt(1+x)-sqrt(1-x)", "exp(-x^2)*sin(3*x)", "log(2+x)/(1+x^2)",
        "arctan(x)^3", "(1+x)^(5/2)", "cos(x)^2 - x^(1/3)", "kurepa(x)", "kurepa_deriv(1, x)"}) {
    const Expression e = parse(text);
    const Expression d = differentiate(e, 1);
    for (const char* xs : {"0.2", "0.55", "0.9"}) {
      const Real x = R(xs);
      const Real fd = (evaluate(e, x + h, p) - evaluate(e, x - h, p)) / (2 * h);
      EXPECT_LT(rel_diff(evaluate(d, x, p), fd), 1e-18) << text << " at " << xs;
    }
  }
}

TEST_F(ExprTest, HigherOrderDerivativeMatchesRepeated) {
  const Expression e = parse("exp(x)*arcsin(x/2)");
  const Expression d3 = differentiate(e, 3);
  const Expression d111 = differentiate(differentiate(differentiate(e, 1), 1), 1);
  EXPECT_LT(rel_diff(evaluate(d3, R("0.4"), p), evaluate(d111, R("0.4"), p)), 1e-45);
}

TEST_F(ExprTest, ConstantsFoldExactly) {
  const Expression e = parse("(1/3 + 2/3) * x + 0");
  EXPECT_EQ(e.root().kind, NodeKind::kVariable);
  const Expression c = parse("2^10 - 24");
  ASSERT_EQ(c.root().kind, NodeKind::kConstant);
  EXPECT_EQ(c.root().value, Rational(1000));
}

TEST_F(ExprTest, EvaluationIsIndependentOfPrecisionUpToRounding) {
  const Expression e = parse("exp(x)*sin(x) - x^(3/2)");
  const Real at50 = evaluate(e, R("0.7"), p);
  const Precision p80(80);
  PrecisionScope wide(p80);
  const Real at80 = evaluate(e, R("0.7"), p80);
  EXPECT_LT(rel_diff(at50, at80), 1e-47);
}

}  // namespace
