#pragma once

// Univariate expression language: parsing, canonical printing, evaluation at
// working precision and symbolic differentiation.
//
// Grammar (whitespace is ignored between tokens):
//
//   expression := term { ("+" | "-") term }
//   term       := unary { ("*" | "/") unary }
//   unary      := ("+" | "-") unary | power
//   power      := primary [ "^" unary ]                  (right associative)
//   primary    := number | "x" | constant | call | "(" expression ")"
//   constant   := "pi" | "e" | "sqrt2"
//   call       := function "(" expression ")"
//               | "kurepa_deriv" "(" integer "," expression ")"
//   function   := "sqrt" | "exp" | "log" | "sin" | "cos" | "arcsin" | "arctan"
//               | "kurepa"
//   number     := digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
//
// The exponent of "^" must fold to a rational constant. Numeric literals are
// stored as exact rationals, so the tree does not depend on the precision.

#include "ineqcert/real.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <memory>
#include <mutex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace ineqcert {

using Rational = boost::multiprecision::mpq_rational;

enum class NodeKind { kConstant, kVariable, kNamedConstant, kUnary, kBinary, kKurepa, kKurepaDeriv };
enum class NamedConstant { kPi, kE, kSqrt2 };
enum class UnaryOp { kNeg, kSqrt, kExp, kLog, kSin, kCos, kArcsin, kArctan };
enum class BinaryOp { kAdd, kSub, kMul, kDiv, kPow };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Tree node. Nodes are shared and only ever handed out as NodePtr (pointer to
/// const); build them through the make_* factories, which fold constants.
struct Node {
  NodeKind kind = NodeKind::kConstant;
  Rational value;                          // kConstant
  NamedConstant named = NamedConstant::kPi;  // kNamedConstant
  UnaryOp unary = UnaryOp::kNeg;           // kUnary
  BinaryOp binary = BinaryOp::kAdd;        // kBinary
  int order = 0;                           // kKurepaDeriv
  std::vector<NodePtr> children;
  bool depends_on_x = false;

  // Values of x-independent Kurepa subtrees, keyed by precision in bits.
  mutable std::mutex cache_mutex;
  mutable std::map<long, Real> cache;
};

NodePtr make_constant(Rational value);
NodePtr make_variable();
NodePtr make_named(NamedConstant c);
NodePtr make_unary(UnaryOp op, NodePtr arg);
/// kPow requires `rhs` to be a constant node (throws ConfigError otherwise).
NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs);
NodePtr make_kurepa(NodePtr arg);
NodePtr make_kurepa_deriv(int order, NodePtr arg);

/// A parsed univariate real function of x.
class Expression {
 public:
  Expression(NodePtr root, std::string source_text);

  const Node& root() const noexcept { return *root_; }
  const NodePtr& root_ptr() const noexcept { return root_; }
  const std::string& source_text() const noexcept { return source_; }

 private:
  NodePtr root_;
  std::string source_;
};

/// Throws ParseError (with 0-based position) on syntax errors and
/// UnknownIdentifierError on names outside the grammar.
Expression parse(std::string_view source);

/// Fully parenthesized canonical text; parse(print(e)) is structurally equal to e.
std::string print(const Expression& e);
std::string print(const Node& n);

bool structurally_equal(const Node& lhs, const Node& rhs);
bool structurally_equal(const Expression& lhs, const Expression& rhs);

/// Evaluates e at x with working precision p. Throws DomainError outside the
/// natural domain and propagates QuadratureError from Kurepa nodes.
Real evaluate(const Expression& e, const Real& x, const Precision& p);

/// order-th symbolic derivative (order >= 1).
Expression differentiate(const Expression& e, int order = 1);

/// Rational to working-precision real.
Real to_real(const Rational& q);

}  // namespace ineqcert
