#include "radex/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

#include "radex/errors.hpp"

namespace radex {

using Node = Expression::Node;
using NodePtr = Expression::NodePtr;
using Kind = Expression::Node::Kind;

std::string_view to_string(Expression::Func f) {
  switch (f) {
    case Expression::Func::Exp: return "exp";
    case Expression::Func::Log: return "log";
    case Expression::Func::Sqrt: return "sqrt";
    case Expression::Func::Sin: return "sin";
    case Expression::Func::Cos: return "cos";
  }
  return "?";
}

namespace {

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->number = v;
  return n;
}

NodePtr make_node(Kind kind, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr make_call(Expression::Func f, NodePtr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->func = f;
  n->lhs = std::move(arg);
  return n;
}

template <typename T>
T apply(Expression::Func f, T x) {
  using std::cos, std::exp, std::log, std::sin, std::sqrt;
  switch (f) {
    case Expression::Func::Exp: return exp(x);
    case Expression::Func::Log: return log(x);
    case Expression::Func::Sqrt: return sqrt(x);
    case Expression::Func::Sin: return sin(x);
    case Expression::Func::Cos: return cos(x);
  }
  return x;
}

template <typename T>
T eval(const Node& n, T z) {
  using std::pow;
  switch (n.kind) {
    case Kind::Number: return T(n.number);
    case Kind::Variable: return z;
    case Kind::Negate: return -eval(*n.lhs, z);
    case Kind::Add: return eval(*n.lhs, z) + eval(*n.rhs, z);
    case Kind::Sub: return eval(*n.lhs, z) - eval(*n.rhs, z);
    case Kind::Mul: return eval(*n.lhs, z) * eval(*n.rhs, z);
    case Kind::Div: return eval(*n.lhs, z) / eval(*n.rhs, z);
    case Kind::Pow: return pow(eval(*n.lhs, z), eval(*n.rhs, z));
    case Kind::Call: return apply(n.func, eval(*n.lhs, z));
  }
  return T(0.0);
}

std::string render_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_node(const Node& n) {
  auto binary = [&](const char* op) {
    return "(" + render_node(*n.lhs) + " " + op + " " + render_node(*n.rhs) + ")";
  };
  switch (n.kind) {
    case Kind::Number: {
      std::string s = render_number(n.number);
      return n.number < 0 ? "(" + s + ")" : s;
    }
    case Kind::Variable: return "z";
    case Kind::Negate: return "(-" + render_node(*n.lhs) + ")";
    case Kind::Add: return binary("+");
    case Kind::Sub: return binary("-");
    case Kind::Mul: return binary("*");
    case Kind::Div: return binary("/");
    case Kind::Pow: return binary("^");
    case Kind::Call: return std::string(to_string(n.func)) + "(" + render_node(*n.lhs) + ")";
  }
  return "";
}

// Recursive-descent parser; one method per grammar production.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) {
      fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"},
           std::string("unexpected '") + text_[pos_] + "'");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail) const {
    throw ParseError(pos_, std::move(expected), detail);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_node(Kind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make_node(Kind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make_node(Kind::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = make_node(Kind::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    if (accept('-')) return make_node(Kind::Negate, factor());
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (accept('^')) return make_node(Kind::Pow, base, factor());
    return base;
  }

  NodePtr atom() {
    skip_ws();
    static const std::vector<std::string> kAtomStart = {"number", "'z'", "function", "'('", "'-'"};
    if (pos_ >= text_.size()) fail(kAtomStart, "unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) {
        skip_ws();
        fail({"')'"}, "unbalanced parenthesis");
      }
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view ident = text_.substr(start, pos_ - start);
      if (ident == "z") return make_node(Kind::Variable, nullptr);
      static constexpr Expression::Func kFuncs[] = {Expression::Func::Exp, Expression::Func::Log,
                                                    Expression::Func::Sqrt, Expression::Func::Sin,
                                                    Expression::Func::Cos};
      for (auto f : kFuncs) {
        if (ident == to_string(f)) {
          if (!accept('(')) {
            skip_ws();
            fail({"'('"}, "function call requires parentheses");
          }
          NodePtr arg = expr();
          if (!accept(')')) {
            skip_ws();
            fail({"')'"}, "unbalanced parenthesis");
          }
          return make_call(f, arg);
        }
      }
      pos_ = start;
      fail(kAtomStart, "unknown identifier '" + std::string(ident) + "'");
    }
    fail(kAtomStart, std::string("unexpected '") + c + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = start;
      fail({"digit"}, "malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        pos_ = save + 1;
        fail({"exponent digits"}, "malformed exponent");
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      pos_ = start;
      fail({"number"}, "number out of range");
    }
    return make_number(value);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(NodePtr root) : root_(std::move(root)) {}

double Expression::evaluate(double z) const { return eval(*root_, z); }

Dual Expression::evaluate(Dual z) const { return eval(*root_, z); }

std::string Expression::render() const { return render_node(*root_); }

std::optional<double> Expression::power_law_exponent() const {
  const Node& r = *root_;
  if (r.kind != Kind::Pow || r.lhs->kind != Kind::Variable) return std::nullopt;
  const Node& e = *r.rhs;
  if (e.kind == Kind::Number) return e.number;
  if (e.kind == Kind::Negate && e.lhs->kind == Kind::Number) return -e.lhs->number;
  return std::nullopt;
}

Expression parse_expression(std::string_view text) {
  return Expression(Parser(text).parse());
}

}  // namespace radex
