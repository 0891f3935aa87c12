#include <gtest/gtest.h>

#include <cmath>

#include "radex/errors.hpp"
#include "radex/weights.hpp"
#include "support/oracles.hpp"

namespace radex {
namespace {

TEST(Weights, PowerLawValues) {
  EXPECT_EQ(eval_v(RadialWeight::power_law(2.0), 3.0), 9.0);
  EXPECT_EQ(eval_v(RadialWeight::power_law(0.0), 17.3), 1.0);
  EXPECT_EQ(eval_q(RadialWeight::power_law(2.0), 3.0), 6.0);
  EXPECT_DOUBLE_EQ(eval_q(RadialWeight::power_law(0.5), 4.0), 0.25);
}

TEST(Weights, ConstantWeightIsExactlyOne) {
  const RadialWeight w = RadialWeight::power_law(0.0);
  auto g = testing::rng(7);
  for (int i = 0; i < 100; ++i) {
    const double z = testing::uniform(g, 1e-6, 1e6);
    EXPECT_EQ(w.v(z), 1.0);
    EXPECT_EQ(w.q(z), 0.0);
  }
}

TEST(Weights, ExpressionValues) {
  EXPECT_DOUBLE_EQ(eval_v(parse_weight("1/z"), 2.0), 0.5);
  EXPECT_DOUBLE_EQ(eval_v(parse_weight("1/(1+z^2)"), 1.0), 0.5);
}

TEST(Weights, ExpDerivativeAtZero) {
  // z = 0 is outside the default domain (z > 0), so check the dual-number
  // tree directly and the weight just inside the domain.
  const Expression e = parse_expression("exp(z)");
  const Dual d = e.evaluate(Dual::variable(0.0));
  EXPECT_EQ(d.value, 1.0);
  EXPECT_EQ(d.deriv, 1.0);
  EXPECT_NEAR(eval_q(parse_weight("exp(z)"), 1e-12), 1.0, 1e-11);
}

TEST(Weights, PowerLawReduction) {
  const RadialWeight w = parse_weight("z^2");
  ASSERT_TRUE(w.is_power_law());
  EXPECT_EQ(w.lambda(), 2.0);
  EXPECT_TRUE(parse_weight(" z ^ 0.5 ").is_power_law());
  const RadialWeight neg = parse_weight("z^-1");
  ASSERT_TRUE(neg.is_power_law());
  EXPECT_EQ(neg.lambda(), -1.0);
  EXPECT_FALSE(parse_weight("z^2 + 0").is_power_law());
  EXPECT_FALSE(parse_weight("z^(1/2)").is_power_law());
}

TEST(Weights, Errors) {
  const RadialWeight inv = parse_weight("1/z");
  try {
    inv.v(0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
  try {
    parse_weight("1 - z").v(2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPositiveWeight);
  }
  try {
    parse_weight("log(z - 1)").v(1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Eval);
  }
  try {
    RadialWeight(PowerLaw{1.0}, 2.0).v(1.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

// q against the central difference (v(z+h) - v(z-h)) / 2h, h = 1e-6 max(1, z).
TEST(Weights, DerivativeMatchesCentralDifference) {
  const char* exprs[] = {"z^2",          "z^0.5",        "1/z",         "exp(z)",
                         "1/(1+z^2)",    "sqrt(1+z) * log(1 + z)",      "2 + sin(z)",
                         "z^z",          "cos(z)^2 + 1", "(z + 1)^-1.5", "exp(-z^2) + 0.1"};
  auto g = testing::rng(11);
  for (const char* text : exprs) {
    const RadialWeight w = parse_weight(text);
    for (int i = 0; i < 100; ++i) {
      const double z = testing::uniform(g, 0.05, 5.0);
      const double h = 1e-6 * std::max(1.0, z);
      const double fd = testing::central_difference([&](double x) { return w.v(x); }, z, h);
      const double q = w.q(z);
      EXPECT_LE(std::abs(q - fd), 1e-6 * (1.0 + std::abs(q))) << text << " at z=" << z;
    }
  }
}

TEST(Weights, RenderRoundTrip) {
  const char* exprs[] = {"1/(1+z^2)", "-z^2 + 3*z - -2", "exp(sin(z)) / sqrt(z + 0.125)",
                         "2^z^0.5", "log(1 + z) * 1e-3 + 4.5e2", "--z*-3 + 10"};
  auto g = testing::rng(3);
  for (const char* text : exprs) {
    const Expression e = parse_expression(text);
    const Expression back = parse_expression(e.render());
    EXPECT_EQ(back.render(), e.render());
    for (int i = 0; i < 100; ++i) {
      const double z = testing::uniform(g, 0.01, 3.0);
      const double a = e.evaluate(z), b = back.evaluate(z);
      EXPECT_LE(std::abs(a - b), 1e-12 * std::abs(a)) << text;
    }
  }
}

}  // namespace
}  // namespace radex
