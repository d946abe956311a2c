#include "bsingular/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "bsingular/errors.hpp"

namespace bsingular {

namespace {

using Node = Expression::Node;
using NodePtr = Expression::NodePtr;
using Kind = Node::Kind;

NodePtr make(Kind kind, NodePtr left = nullptr, NodePtr right = nullptr, double value = 0.0) {
  return std::make_shared<const Node>(Node{kind, value, std::move(left), std::move(right)});
}

NodePtr constant(double value) { return make(Kind::constant, nullptr, nullptr, value); }

bool is_constant(const NodePtr& n, double value) { return n->kind == Kind::constant && n->value == value; }

NodePtr add(NodePtr a, NodePtr b) {
  if (is_constant(a, 0.0)) return b;
  if (is_constant(b, 0.0)) return a;
  if (a->kind == Kind::constant && b->kind == Kind::constant) return constant(a->value + b->value);
  return make(Kind::add, std::move(a), std::move(b));
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (is_constant(b, 0.0)) return a;
  if (a->kind == Kind::constant && b->kind == Kind::constant) return constant(a->value - b->value);
  if (is_constant(a, 0.0)) return make(Kind::neg, std::move(b));
  return make(Kind::sub, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (is_constant(a, 0.0) || is_constant(b, 0.0)) return constant(0.0);
  if (is_constant(a, 1.0)) return b;
  if (is_constant(b, 1.0)) return a;
  if (a->kind == Kind::constant && b->kind == Kind::constant) return constant(a->value * b->value);
  return make(Kind::mul, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
  if (is_constant(a, 0.0)) return constant(0.0);
  if (is_constant(b, 1.0)) return a;
  return make(Kind::div, std::move(a), std::move(b));
}

NodePtr neg(NodePtr a) {
  if (a->kind == Kind::constant) return constant(-a->value);
  if (a->kind == Kind::neg) return a->left;
  return make(Kind::neg, std::move(a));
}

NodePtr power(NodePtr base, double p) {
  if (p == 0.0) return constant(1.0);
  if (p == 1.0) return base;
  if (base->kind == Kind::constant) return constant(std::pow(base->value, p));
  return make(Kind::pow, std::move(base), nullptr, p);
}

double evaluate(const Node& n, double t) {
  switch (n.kind) {
    case Kind::constant: return n.value;
    case Kind::variable: return t;
    case Kind::add: return evaluate(*n.left, t) + evaluate(*n.right, t);
    case Kind::sub: return evaluate(*n.left, t) - evaluate(*n.right, t);
    case Kind::mul: return evaluate(*n.left, t) * evaluate(*n.right, t);
    case Kind::div: return evaluate(*n.left, t) / evaluate(*n.right, t);
    case Kind::neg: return -evaluate(*n.left, t);
    case Kind::pow: return std::pow(evaluate(*n.left, t), n.value);
    case Kind::abs: return std::abs(evaluate(*n.left, t));
    case Kind::sign: {
      const double v = evaluate(*n.left, t);
      return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
    }
    case Kind::log: return std::log(evaluate(*n.left, t));
  }
  return std::nan("");
}

NodePtr differentiate(const NodePtr& n) {
  switch (n->kind) {
    case Kind::constant: return constant(0.0);
    case Kind::variable: return constant(1.0);
    case Kind::add: return add(differentiate(n->left), differentiate(n->right));
    case Kind::sub: return sub(differentiate(n->left), differentiate(n->right));
    case Kind::mul:
      return add(mul(differentiate(n->left), n->right), mul(n->left, differentiate(n->right)));
    case Kind::div: {
      // (u/v)' = u'/v - u v' / v^2
      const NodePtr first = div(differentiate(n->left), n->right);
      const NodePtr second = div(mul(n->left, differentiate(n->right)), power(n->right, 2.0));
      return sub(first, second);
    }
    case Kind::neg: return neg(differentiate(n->left));
    case Kind::pow:
      return mul(mul(constant(n->value), power(n->left, n->value - 1.0)), differentiate(n->left));
    case Kind::abs: return mul(make(Kind::sign, n->left), differentiate(n->left));
    case Kind::sign: return constant(0.0);
    case Kind::log: return div(differentiate(n->left), n->left);
  }
  return constant(0.0);
}

std::string format_number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::string render(const Node& n) {
  switch (n.kind) {
    case Kind::constant: return format_number(n.value);
    case Kind::variable: return "t";
    case Kind::add: return "(" + render(*n.left) + " + " + render(*n.right) + ")";
    case Kind::sub: return "(" + render(*n.left) + " - " + render(*n.right) + ")";
    case Kind::mul: return "(" + render(*n.left) + " * " + render(*n.right) + ")";
    case Kind::div: return "(" + render(*n.left) + " / " + render(*n.right) + ")";
    case Kind::neg: return "(-" + render(*n.left) + ")";
    case Kind::pow: return "(" + render(*n.left) + "^" + format_number(n.value) + ")";
    case Kind::abs: return "|" + render(*n.left) + "|";
    case Kind::sign: return "sign(" + render(*n.left) + ")";
    case Kind::log: return "log(" + render(*n.left) + ")";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigurationError("cannot parse function \"" + text_ + "\" at position " + std::to_string(pos_) + ": " +
                             what);
  }

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
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr node = term();
    for (;;) {
      if (accept('+'))
        node = make(Kind::add, node, term());
      else if (accept('-'))
        node = make(Kind::sub, node, term());
      else
        return node;
    }
  }

  NodePtr term() {
    NodePtr node = unary();
    for (;;) {
      if (accept('*'))
        node = make(Kind::mul, node, unary());
      else if (accept('/'))
        node = make(Kind::div, node, unary());
      else
        return node;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::neg, unary());
    return power_expr();
  }

  NodePtr power_expr() {
    NodePtr base = primary();
    if (!accept('^')) return base;
    const bool parenthesized = accept('(');
    const bool negative = accept('-');
    double p = number();
    if (negative) p = -p;
    if (parenthesized) expect(')');
    return make(Kind::pow, base, nullptr, p);
  }

  double number() {
    skip_space();
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(number());
    if (accept('(')) {
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (accept('|')) {
      NodePtr inner = expr();
      expect('|');
      return make(Kind::abs, inner);
    }
    if (text_.compare(pos_, 3, "log") == 0) {
      pos_ += 3;
      return make(Kind::log, primary());
    }
    if (c == 't' || c == 'x') {
      ++pos_;
      return make(Kind::variable);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text) { return Expression(Parser(text).parse(), text); }

double Expression::operator()(double t) const { return evaluate(*root_, t); }

Expression Expression::derivative() const {
  return Expression(differentiate(root_), "d/dt " + source_);
}

Expression Expression::derivative(int order) const {
  if (order < 0) throw DomainError("derivative order must be non-negative");
  Expression result = *this;
  for (int i = 0; i < order; ++i) result = result.derivative();
  return result;
}

std::string Expression::to_string() const { return render(*root_); }

}  // namespace bsingular
