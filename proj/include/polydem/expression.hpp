#pragma once

#include "polydem/geometry.hpp"

#include <memory>
#include <string>

namespace polydem {

/// Arithmetic expressions over (x, y, z, t) with r = hypot(x, y), the usual
/// functions and constants. Grammar (precedence climbing):
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := unary ('^' factor)?
///   unary  := ('+'|'-')* primary
///   primary:= number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
class Expression {
 public:
  Expression() = default;
  static Expression parse(const std::string& text);

  double eval(const Vec3& pos, double t) const;
  bool empty() const { return !root_; }
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

/// Comma-separated component expressions, padded with zeros up to 3.
class VectorExpression {
 public:
  VectorExpression() = default;
  static VectorExpression parse(const std::string& text, int dim);

  Vec3 eval(const Vec3& pos, double t) const;
  int components() const { return n_; }
  bool empty() const { return n_ == 0; }
  const std::string& text() const { return text_; }

 private:
  Expression comp_[3];
  int n_ = 0;
  std::string text_;
};

}  // namespace polydem
