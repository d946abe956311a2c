#pragma once

// Small expression language for test functions of one variable t.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ['-'] number | '(' ['-'] number ')'
//   primary := number | 't' | 'x' | '(' expr ')' | '|' expr '|' | 'log' primary
//
// Derivatives are symbolic, so every parsed function comes with exact
// derivative evaluators of any order.

#include <memory>
#include <string>
#include <vector>

namespace bsingular {

class Expression {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  /// Throws ConfigurationError with the offending position on bad input.
  static Expression parse(const std::string& text);

  double operator()(double t) const;
  Expression derivative() const;
  /// derivative() applied `order` times.
  Expression derivative(int order) const;

  const std::string& source() const { return source_; }
  /// Canonical, fully parenthesized form.
  std::string to_string() const;

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  static Expression from_node(NodePtr root, std::string source) { return Expression(std::move(root), std::move(source)); }

 private:
  Expression(NodePtr root, std::string source) : root_(std::move(root)), source_(std::move(source)) {}

  NodePtr root_;
  std::string source_;
};

struct Expression::Node {
  enum class Kind { constant, variable, add, sub, mul, div, neg, pow, abs, sign, log };
  Kind kind;
  double value = 0.0;  // constant value, or the exponent of pow
  NodePtr left;
  NodePtr right;
};

}  // namespace bsingular
