#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "radex/dual.hpp"

namespace radex {

// Immutable arithmetic tree over the single variable z.
//
//   expr   := term (('+'|'-') term)* ;
//   term   := factor (('*'|'/') factor)* ;
//   factor := '-' factor | power ;
//   power  := atom ('^' factor)? ;
//   atom   := number | 'z' | func '(' expr ')' | '(' expr ')' ;
//   func   := 'exp'|'log'|'sqrt'|'sin'|'cos' ;
class Expression {
 public:
  enum class Func { Exp, Log, Sqrt, Sin, Cos };

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    enum class Kind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };
    Kind kind = Kind::Number;
    double number = 0.0;
    Func func = Func::Exp;
    NodePtr lhs;
    NodePtr rhs;
  };

  explicit Expression(NodePtr root);

  double evaluate(double z) const;
  Dual evaluate(Dual z) const;

  // Fully parenthesized text that parses back to an equivalent tree.
  std::string render() const;

  // Set when the tree is exactly z^c (or z^-c) for a numeric literal c.
  std::optional<double> power_law_exponent() const;

  const Node& root() const { return *root_; }

 private:
  NodePtr root_;
};

// Throws ParseError carrying the byte offset and the expected-token set.
Expression parse_expression(std::string_view text);

std::string_view to_string(Expression::Func f);

}  // namespace radex
