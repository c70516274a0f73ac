#include "ineqcert/expr.hpp"

#include "ineqcert/errors.hpp"
#include "ineqcert/quad.hpp"

#include <cctype>
#include <sstream>
#include <utility>

namespace ineqcert {
namespace {

std::shared_ptr<Node> new_node(NodeKind kind) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  return n;
}

bool is_constant(const NodePtr& n) { return n->kind == NodeKind::kConstant; }
bool is_constant(const NodePtr& n, long v) { return is_constant(n) && n->value == v; }

bool is_integer(const Rational& q) { return denominator(q) == 1; }

// q^k for integer k, exact.
Rational rational_power(const Rational& base, long k) {
  Rational result = 1;
  Rational factor = k >= 0 ? base : Rational(1) / base;
  for (long i = 0; i < std::abs(k); ++i) {
    result *= factor;
  }
  return result;
}

}  // namespace

NodePtr make_constant(Rational value) {
  auto n = new_node(NodeKind::kConstant);
  n->value = std::move(value);
  return n;
}

NodePtr make_variable() {
  auto n = new_node(NodeKind::kVariable);
  n->depends_on_x = true;
  return n;
}

NodePtr make_named(NamedConstant c) {
  auto n = new_node(NodeKind::kNamedConstant);
  n->named = c;
  return n;
}

NodePtr make_unary(UnaryOp op, NodePtr arg) {
  if (op == UnaryOp::kNeg) {
    if (is_constant(arg)) {
      return make_constant(-arg->value);
    }
    if (arg->kind == NodeKind::kUnary && arg->unary == UnaryOp::kNeg) {
      return arg->children[0];
    }
  }
  auto n = new_node(NodeKind::kUnary);
  n->unary = op;
  n->depends_on_x = arg->depends_on_x;
  n->children = {std::move(arg)};
  return n;
}

NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
  const bool both_constant = is_constant(lhs) && is_constant(rhs);
  switch (op) {
    case BinaryOp::kAdd:
      if (both_constant) return make_constant(lhs->value + rhs->value);
      if (is_constant(lhs, 0)) return rhs;
      if (is_constant(rhs, 0)) return lhs;
      break;
    case BinaryOp::kSub:
      if (both_constant) return make_constant(lhs->value - rhs->value);
      if (is_constant(rhs, 0)) return lhs;
      if (is_constant(lhs, 0)) return make_unary(UnaryOp::kNeg, rhs);
      break;
    case BinaryOp::kMul:
      if (both_constant) return make_constant(lhs->value * rhs->value);
      if (is_constant(lhs, 0) || is_constant(rhs, 0)) return make_constant(0);
      if (is_constant(lhs, 1)) return rhs;
      if (is_constant(rhs, 1)) return lhs;
      break;
    case BinaryOp::kDiv:
      if (both_constant && rhs->value != 0) return make_constant(lhs->value / rhs->value);
      if (is_constant(rhs, 1)) return lhs;
      if (is_constant(lhs, 0) && !is_constant(rhs, 0)) return make_constant(0);
      break;
    case BinaryOp::kPow:
      if (!is_constant(rhs)) {
        throw ConfigError("the exponent of '^' must be a rational constant");
      }
      if (is_constant(rhs, 0)) return make_constant(1);
      if (is_constant(rhs, 1)) return lhs;
      if (is_constant(lhs) && is_integer(rhs->value) &&
          (lhs->value != 0 || rhs->value > 0) && abs(numerator(rhs->value)) <= 64) {
        return make_constant(rational_power(lhs->value, numerator(rhs->value).convert_to<long>()));
      }
      break;
  }
  auto n = new_node(NodeKind::kBinary);
  n->binary = op;
  n->depends_on_x = lhs->depends_on_x || rhs->depends_on_x;
  n->children = {std::move(lhs), std::move(rhs)};
  return n;
}

NodePtr make_kurepa(NodePtr arg) {
  auto n = new_node(NodeKind::kKurepa);
  n->depends_on_x = arg->depends_on_x;
  n->children = {std::move(arg)};
  return n;
}

NodePtr make_kurepa_deriv(int order, NodePtr arg) {
  if (order < 1) {
    throw ConfigError("kurepa_deriv order must be positive");
  }
  auto n = new_node(NodeKind::kKurepaDeriv);
  n->order = order;
  n->depends_on_x = arg->depends_on_x;
  n->children = {std::move(arg)};
  return n;
}

Expression::Expression(NodePtr root, std::string source_text)
    : root_(std::move(root)), source_(std::move(source_text)) {}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    skip_space();
    if (pos_ >= text_.size()) {
      throw ParseError("empty expression", pos_);
    }
    NodePtr result = expression();
    skip_space();
    if (pos_ < text_.size()) {
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return result;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size()) {
      throw ParseError(std::string("expected '") + c + "' but reached end of input", pos_);
    }
    if (text_[pos_] != c) {
      throw ParseError(std::string("expected '") + c + "', found '" + text_[pos_] + "'", pos_);
    }
    ++pos_;
  }

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(BinaryOp::kAdd, lhs, term());
      } else if (accept('-')) {
        lhs = make_binary(BinaryOp::kSub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(BinaryOp::kMul, lhs, unary());
      } else if (accept('/')) {
        lhs = make_binary(BinaryOp::kDiv, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) {
      return make_unary(UnaryOp::kNeg, unary());
    }
    if (accept('+')) {
      return unary();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) {
      skip_space();
      const std::size_t exponent_pos = pos_;
      NodePtr exponent = unary();
      if (!is_constant(exponent)) {
        throw ParseError("the exponent of '^' must be a rational constant", exponent_pos);
      }
      return make_binary(BinaryOp::kPow, base, exponent);
    }
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) {
      throw ParseError("unexpected end of input", pos_);
    }
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expression();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return identifier();
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    Rational mantissa = 0;
    long decimals = 0;
    std::size_t digits = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      mantissa = mantissa * 10 + (text_[pos_] - '0');
      ++pos_;
      ++digits;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        mantissa = mantissa * 10 + (text_[pos_] - '0');
        ++decimals;
        ++pos_;
        ++digits;
      }
    }
    if (digits == 0) {
      throw ParseError("malformed number", start);
    }
    long exponent = 0;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      // Only an exponent if digits follow; "2e" would otherwise swallow the constant e.
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        const bool negative = text_[pos_ + 1] == '-';
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          exponent = exponent * 10 + (text_[pos_] - '0');
          if (exponent > 100000) {
            throw ParseError("exponent out of range", start);
          }
          ++pos_;
        }
        if (negative) exponent = -exponent;
      }
    }
    return make_constant(mantissa * rational_power(Rational(10), exponent - decimals));
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "x") return make_variable();
    if (name == "pi") return make_named(NamedConstant::kPi);
    if (name == "e") return make_named(NamedConstant::kE);
    if (name == "sqrt2") return make_named(NamedConstant::kSqrt2);

    static const std::pair<const char*, UnaryOp> functions[] = {
        {"sqrt", UnaryOp::kSqrt}, {"exp", UnaryOp::kExp},       {"log", UnaryOp::kLog},
        {"sin", UnaryOp::kSin},   {"cos", UnaryOp::kCos},       {"arcsin", UnaryOp::kArcsin},
        {"arctan", UnaryOp::kArctan}};
    for (const auto& [fname, op] : functions) {
      if (name == fname) {
        expect('(');
        NodePtr arg = expression();
        expect(')');
        return make_unary(op, arg);
      }
    }
    if (name == "kurepa") {
      expect('(');
      NodePtr arg = expression();
      expect(')');
      return make_kurepa(arg);
    }
    if (name == "kurepa_deriv") {
      expect('(');
      skip_space();
      const std::size_t order_pos = pos_;
      NodePtr order = expression();
      if (!is_constant(order) || !is_integer(order->value) || order->value < 1 ||
          order->value > quad::kMaxDerivativeOrder) {
        throw ParseError("kurepa_deriv order must be an integer in 1.." +
                             std::to_string(quad::kMaxDerivativeOrder),
                         order_pos);
      }
      expect(',');
      NodePtr arg = expression();
      expect(')');
      return make_kurepa_deriv(numerator(order->value).convert_to<int>(), arg);
    }
    throw UnknownIdentifierError(name, start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::kNeg: return "-";
    case UnaryOp::kSqrt: return "sqrt";
    case UnaryOp::kExp: return "exp";
    case UnaryOp::kLog: return "log";
    case UnaryOp::kSin: return "sin";
    case UnaryOp::kCos: return "cos";
    case UnaryOp::kArcsin: return "arcsin";
    case UnaryOp::kArctan: return "arctan";
  }
  return "?";
}

char binary_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return '+';
    case BinaryOp::kSub: return '-';
    case BinaryOp::kMul: return '*';
    case BinaryOp::kDiv: return '/';
    case BinaryOp::kPow: return '^';
  }
  return '?';
}

void print_rational(std::ostream& os, const Rational& q) {
  if (is_integer(q)) {
    if (q < 0) {
      os << "(" << numerator(q) << ")";
    } else {
      os << numerator(q);
    }
    return;
  }
  os << "(" << numerator(q) << "/" << denominator(q) << ")";
}

void print_node(std::ostream& os, const Node& n) {
  switch (n.kind) {
    case NodeKind::kConstant:
      print_rational(os, n.value);
      return;
    case NodeKind::kVariable:
      os << "x";
      return;
    case NodeKind::kNamedConstant:
      os << (n.named == NamedConstant::kPi ? "pi" : n.named == NamedConstant::kE ? "e" : "sqrt2");
      return;
    case NodeKind::kUnary:
      if (n.unary == UnaryOp::kNeg) {
        os << "(-";
        print_node(os, *n.children[0]);
        os << ")";
      } else {
        os << unary_name(n.unary) << "(";
        print_node(os, *n.children[0]);
        os << ")";
      }
      return;
    case NodeKind::kBinary:
      os << "(";
      print_node(os, *n.children[0]);
      os << binary_symbol(n.binary);
      print_node(os, *n.children[1]);
      os << ")";
      return;
    case NodeKind::kKurepa:
      os << "kurepa(";
      print_node(os, *n.children[0]);
      os << ")";
      return;
    case NodeKind::kKurepaDeriv:
      os << "kurepa_deriv(" << n.order << ",";
      print_node(os, *n.children[0]);
      os << ")";
      return;
  }
}

}  // namespace

Expression parse(std::string_view source) {
  Parser parser(source);
  return Expression(parser.parse_all(), std::string(source));
}

std::string print(const Node& n) {
  std::ostringstream os;
  print_node(os, n);
  return os.str();
}

std::string print(const Expression& e) { return print(e.root()); }

bool structurally_equal(const Node& lhs, const Node& rhs) {
  if (lhs.kind != rhs.kind) return false;
  switch (lhs.kind) {
    case NodeKind::kConstant:
      return lhs.value == rhs.value;
    case NodeKind::kVariable:
      return true;
    case NodeKind::kNamedConstant:
      return lhs.named == rhs.named;
    case NodeKind::kUnary:
      if (lhs.unary != rhs.unary) return false;
      break;
    case NodeKind::kBinary:
      if (lhs.binary != rhs.binary) return false;
      break;
    case NodeKind::kKurepa:
      break;
    case NodeKind::kKurepaDeriv:
      if (lhs.order != rhs.order) return false;
      break;
  }
  if (lhs.children.size() != rhs.children.size()) return false;
  for (std::size_t i = 0; i < lhs.children.size(); ++i) {
    if (!structurally_equal(*lhs.children[i], *rhs.children[i])) return false;
  }
  return true;
}

bool structurally_equal(const Expression& lhs, const Expression& rhs) {
  return structurally_equal(lhs.root(), rhs.root());
}

// ---------------------------------------------------------------------------
// Evaluation

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
  return r;
}

namespace {

Real evaluate_pow(const Real& base, const Rational& exponent) {
  if (is_integer(exponent)) {
    const long k = numerator(exponent).convert_to<long>();
    if (base == 0 && k < 0) {
      throw DomainError("zero raised to a negative power");
    }
    Real r;
    mpfr_pow_si(r.backend().data(), base.backend().data(), k, MPFR_RNDN);
    return r;
  }
  if (base > 0) {
    return pow(base, to_real(exponent));
  }
  if (base == 0) {
    if (exponent > 0) return Real(0);
    throw DomainError("zero raised to a negative power");
  }
  if (denominator(exponent) % 2 == 0) {
    throw DomainError("even root of a negative number");
  }
  const Real magnitude = pow(-base, to_real(exponent));
  return numerator(exponent) % 2 == 0 ? magnitude : Real(-magnitude);
}

Real evaluate_kurepa(const Node& n, const Real& arg, const Precision& p) {
  if (arg < 0) {
    throw DomainError("kurepa requires a non-negative argument");
  }
  if (n.kind == NodeKind::kKurepa) {
    return quad::kurepa(arg, p).value;
  }
  return quad::kurepa_derivative(arg, n.order, p).value;
}

Real evaluate_node(const Node& n, const Real& x, const Precision& p) {
  switch (n.kind) {
    case NodeKind::kConstant:
      return to_real(n.value);
    case NodeKind::kVariable:
      return x;
    case NodeKind::kNamedConstant:
      switch (n.named) {
        case NamedConstant::kPi: return pi_constant();
        case NamedConstant::kE: return e_constant();
        case NamedConstant::kSqrt2: return sqrt(Real(2));
      }
      break;
    case NodeKind::kUnary: {
      const Real u = evaluate_node(*n.children[0], x, p);
      switch (n.unary) {
        case UnaryOp::kNeg: return -u;
        case UnaryOp::kSqrt:
          if (u < 0) throw DomainError("sqrt of a negative number");
          return sqrt(u);
        case UnaryOp::kExp: return exp(u);
        case UnaryOp::kLog:
          if (u <= 0) throw DomainError("log of a non-positive number");
          return log(u);
        case UnaryOp::kSin: return sin(u);
        case UnaryOp::kCos: return cos(u);
        case UnaryOp::kArcsin:
          if (abs(u) > 1) throw DomainError("arcsin argument outside [-1, 1]");
          return asin(u);
        case UnaryOp::kArctan: return atan(u);
      }
      break;
    }
    case NodeKind::kBinary: {
      const Real lhs = evaluate_node(*n.children[0], x, p);
      if (n.binary == BinaryOp::kPow) {
        return evaluate_pow(lhs, n.children[1]->value);
      }
      const Real rhs = evaluate_node(*n.children[1], x, p);
      switch (n.binary) {
        case BinaryOp::kAdd: return lhs + rhs;
        case BinaryOp::kSub: return lhs - rhs;
        case BinaryOp::kMul: return lhs * rhs;
        case BinaryOp::kDiv:
          if (rhs == 0) throw DomainError("division by zero");
          return lhs / rhs;
        case BinaryOp::kPow: break;
      }
      break;
    }
    case NodeKind::kKurepa:
    case NodeKind::kKurepaDeriv: {
      if (n.depends_on_x) {
        return evaluate_kurepa(n, evaluate_node(*n.children[0], x, p), p);
      }
      const long bits = static_cast<long>(Real::default_precision());
      {
        std::lock_guard<std::mutex> lock(n.cache_mutex);
        auto it = n.cache.find(bits);
        if (it != n.cache.end()) return it->second;
      }
      Real value = evaluate_kurepa(n, evaluate_node(*n.children[0], x, p), p);
      std::lock_guard<std::mutex> lock(n.cache_mutex);
      n.cache.emplace(bits, value);
      return value;
    }
  }
  throw DomainError("malformed expression node");
}

// ---------------------------------------------------------------------------
// Differentiation

NodePtr derive(const NodePtr& n) {
  if (!n->depends_on_x) {
    return make_constant(0);
  }
  switch (n->kind) {
    case NodeKind::kConstant:
    case NodeKind::kNamedConstant:
      return make_constant(0);
    case NodeKind::kVariable:
      return make_constant(1);
    case NodeKind::kUnary: {
      const NodePtr& u = n->children[0];
      NodePtr du = derive(u);
      switch (n->unary) {
        case UnaryOp::kNeg:
          return make_unary(UnaryOp::kNeg, du);
        case UnaryOp::kSqrt:
          return make_binary(BinaryOp::kDiv, du,
                             make_binary(BinaryOp::kMul, make_constant(2), n));
        case UnaryOp::kExp:
          return make_binary(BinaryOp::kMul, n, du);
        case UnaryOp::kLog:
          return make_binary(BinaryOp::kDiv, du, u);
        case UnaryOp::kSin:
          return make_binary(BinaryOp::kMul, make_unary(UnaryOp::kCos, u), du);
        case UnaryOp::kCos:
          return make_unary(UnaryOp::kNeg,
                            make_binary(BinaryOp::kMul, make_unary(UnaryOp::kSin, u), du));
        case UnaryOp::kArcsin:
          return make_binary(
              BinaryOp::kDiv, du,
              make_unary(UnaryOp::kSqrt,
                         make_binary(BinaryOp::kSub, make_constant(1),
                                     make_binary(BinaryOp::kPow, u, make_constant(2)))));
        case UnaryOp::kArctan:
          return make_binary(BinaryOp::kDiv, du,
                             make_binary(BinaryOp::kAdd, make_constant(1),
                                         make_binary(BinaryOp::kPow, u, make_constant(2))));
      }
      break;
    }
    case NodeKind::kBinary: {
      const NodePtr& u = n->children[0];
      const NodePtr& v = n->children[1];
      switch (n->binary) {
        case BinaryOp::kAdd:
          return make_binary(BinaryOp::kAdd, derive(u), derive(v));
        case BinaryOp::kSub:
          return make_binary(BinaryOp::kSub, derive(u), derive(v));
        case BinaryOp::kMul:
          return make_binary(BinaryOp::kAdd, make_binary(BinaryOp::kMul, derive(u), v),
                             make_binary(BinaryOp::kMul, u, derive(v)));
        case BinaryOp::kDiv:
          return make_binary(
              BinaryOp::kDiv,
              make_binary(BinaryOp::kSub, make_binary(BinaryOp::kMul, derive(u), v),
                          make_binary(BinaryOp::kMul, u, derive(v))),
              make_binary(BinaryOp::kPow, v, make_constant(2)));
        case BinaryOp::kPow: {
          const Rational& r = v->value;
          return make_binary(
              BinaryOp::kMul,
              make_binary(BinaryOp::kMul, make_constant(r),
                          make_binary(BinaryOp::kPow, u, make_constant(r - 1))),
              derive(u));
        }
      }
      break;
    }
    case NodeKind::kKurepa:
      return make_binary(BinaryOp::kMul, make_kurepa_deriv(1, n->children[0]),
                         derive(n->children[0]));
    case NodeKind::kKurepaDeriv:
      return make_binary(BinaryOp::kMul, make_kurepa_deriv(n->order + 1, n->children[0]),
                         derive(n->children[0]));
  }
  throw DomainError("malformed expression node");
}

}  // namespace

Real evaluate(const Expression& e, const Real& x, const Precision& p) {
  PrecisionScope scope(p);
  Real result = evaluate_node(e.root(), Real(x), p);
  if (!is_finite(result)) {
    throw DomainError("expression evaluates to a non-finite value");
  }
  return result;
}

Expression differentiate(const Expression& e, int order) {
  if (order < 1) {
    throw ConfigError("derivative order must be at least 1");
  }
  NodePtr current = e.root_ptr();
  for (int i = 0; i < order; ++i) {
    current = derive(current);
  }
  return Expression(current, print(*current));
}

}  // namespace ineqcert
