#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "radex/errors.hpp"
#include "radex/expression.hpp"
#include "radex/rational.hpp"

namespace radex {
namespace {

double at(const char* text, double z) { return parse_expression(text).evaluate(z); }

TEST(Expression, Precedence) {
  EXPECT_DOUBLE_EQ(at("1 + 2 * 3", 0.0), 7.0);
  EXPECT_DOUBLE_EQ(at("(1 + 2) * 3", 0.0), 9.0);
  EXPECT_DOUBLE_EQ(at("2 ^ 3 ^ 2", 0.0), 512.0);  // right-associative
  EXPECT_DOUBLE_EQ(at("-2 ^ 2", 0.0), -4.0);      // unary minus binds looser than ^
  EXPECT_DOUBLE_EQ(at("2 ^ -1", 0.0), 0.5);
  EXPECT_DOUBLE_EQ(at("8 / 4 / 2", 0.0), 1.0);
  EXPECT_DOUBLE_EQ(at("10 - 4 - 3", 0.0), 3.0);
  EXPECT_DOUBLE_EQ(at("z*z - z", 3.0), 6.0);
}

TEST(Expression, NumbersAndFunctions) {
  EXPECT_DOUBLE_EQ(at("1.5e2", 0.0), 150.0);
  EXPECT_DOUBLE_EQ(at(".25", 0.0), 0.25);
  EXPECT_DOUBLE_EQ(at("3.", 0.0), 3.0);
  EXPECT_DOUBLE_EQ(at("2E-1", 0.0), 0.2);
  EXPECT_DOUBLE_EQ(at("exp(0) + log(1) + sqrt(4) + sin(0) + cos(0)", 0.0), 4.0);
  EXPECT_DOUBLE_EQ(at("\t sin ( z )\n", std::numbers::pi / 2), 1.0);
}

struct BadInput {
  const char* text;
  std::size_t offset;
};

class ExpressionErrors : public ::testing::TestWithParam<BadInput> {};

TEST_P(ExpressionErrors, ReportsOffset) {
  try {
    parse_expression(GetParam().text);
    FAIL() << "parsed " << GetParam().text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), GetParam().offset) << e.what();
    EXPECT_FALSE(e.expected().empty());
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
}

INSTANTIATE_TEST_SUITE_P(Malformed, ExpressionErrors,
                         ::testing::Values(BadInput{"z +", 3}, BadInput{"", 0},
                                           BadInput{"(z", 2}, BadInput{"z )", 2},
                                           BadInput{"tan(z)", 0}, BadInput{"exp z", 4},
                                           BadInput{"2 ** z", 3}, BadInput{"1e+", 2},
                                           BadInput{"z z", 2}, BadInput{"x", 0}));

TEST(Expression, ParseErrorListsExpectedTokens) {
  try {
    parse_expression("z +");
    FAIL();
  } catch (const ParseError& e) {
    const auto& exp = e.expected();
    EXPECT_NE(std::find(exp.begin(), exp.end(), "number"), exp.end());
    EXPECT_NE(std::string(e.what()).find("offset 3"), std::string::npos);
  }
}

TEST(Rational, Parse) {
  EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational("4/-6"), Rational(-2, 3));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-1.5"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("2/4").str(), "1/2");
  EXPECT_THROW(parse_rational("1/x"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1/0"), Error);
}

}  // namespace
}  // namespace radex
