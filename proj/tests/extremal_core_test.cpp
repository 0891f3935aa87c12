#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "radex/closed_form.hpp"
#include "radex/errors.hpp"
#include "radex/extremal_core.hpp"
#include "radex/reduced_ode.hpp"
#include "support/oracles.hpp"

namespace radex {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Coordinates, ToCartesian) {
  CartesianPoint c = to_cartesian({0.0, 2.0});
  EXPECT_EQ(c.x, 0.0);
  EXPECT_EQ(c.y, 2.0);
  c = to_cartesian({kPi / 2, 1.0});
  EXPECT_NEAR(c.x, 1.0, 1e-15);
  EXPECT_NEAR(c.y, 0.0, 1e-15);
  c = to_cartesian({kPi / 3, 1.0});
  EXPECT_NEAR(c.x, std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(c.y, 0.5, 1e-15);
}

TEST(Coordinates, ToPolar) {
  PolarPoint p = to_polar({0.0, 2.0});
  EXPECT_EQ(p.phi, 0.0);
  EXPECT_EQ(p.z, 2.0);
  p = to_polar({1.0, 1.0});
  EXPECT_DOUBLE_EQ(p.phi, kPi / 4);
  EXPECT_DOUBLE_EQ(p.z, std::sqrt(2.0));
  p = to_polar({1.0, 0.0});
  EXPECT_DOUBLE_EQ(p.phi, kPi / 2);
  EXPECT_EQ(p.z, 1.0);
  EXPECT_EQ(to_polar({0.0, -1.0}).phi, kPi);
  EXPECT_THROW(to_polar({0.0, 0.0}), Error);
}

TEST(Coordinates, RoundTrip) {
  auto g = testing::rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double phi = testing::uniform(g, -kPi, kPi);
    const double z = std::pow(10.0, testing::uniform(g, -6.0, 6.0));
    const CartesianPoint c = to_cartesian({phi, z});
    EXPECT_NEAR(std::hypot(c.x, c.y), z, 1e-12 * z);
    const PolarPoint back = to_polar(c);
    EXPECT_NEAR(back.phi, phi, 1e-12);
    EXPECT_NEAR(back.z, z, 1e-12 * z);
  }
}

TEST(Partials, Examples) {
  ELPartials d = lagrangian_partials_cartesian({0.3, 0.7}, 0.0, RadialWeight::power_law(0.0));
  EXPECT_EQ(d.V, 1.0);
  EXPECT_EQ(d.M, 0.0);
  EXPECT_EQ(d.N, 0.0);
  EXPECT_EQ(d.P, 0.0);
  d = lagrangian_partials_cartesian({0.0, 2.0}, std::sqrt(3.0), RadialWeight::power_law(1.0));
  EXPECT_DOUBLE_EQ(d.V, 4.0);
  EXPECT_DOUBLE_EQ(d.P, std::sqrt(3.0));
}

// V(x, y, p) = v(sqrt(x^2 + y^2)) sqrt(1 + p^2), differentiated numerically.
void expect_partials_match_fd(const RadialWeight& w, double x, double y, double p) {
  auto V = [&](double xx, double yy, double pp) {
    return w.v(std::hypot(xx, yy)) * std::sqrt(1.0 + pp * pp);
  };
  const double hx = 1e-6 * std::max(1.0, std::abs(x));
  const double hy = 1e-6 * std::max(1.0, std::abs(y));
  const double hp = 1e-6 * std::max(1.0, std::abs(p));
  const double M = (V(x + hx, y, p) - V(x - hx, y, p)) / (2 * hx);
  const double N = (V(x, y + hy, p) - V(x, y - hy, p)) / (2 * hy);
  const double P = (V(x, y, p + hp) - V(x, y, p - hp)) / (2 * hp);
  const ELPartials d = lagrangian_partials_cartesian({x, y}, p, w);
  const double scale = 1.0 + std::abs(d.V);
  EXPECT_NEAR(d.M, M, 1e-6 * scale);
  EXPECT_NEAR(d.N, N, 1e-6 * scale);
  EXPECT_NEAR(d.P, P, 1e-6 * scale);
}

TEST(Partials, MatchFiniteDifferences) {
  expect_partials_match_fd(RadialWeight::power_law(2.0), 3.0, 4.0, 1.0);
  auto g = testing::rng(17);
  for (int i = 0; i < 100; ++i) {
    const RadialWeight w = RadialWeight::power_law(testing::uniform(g, -1.5, 3.0));
    expect_partials_match_fd(w, testing::uniform(g, -2, 2), testing::uniform(g, 0.3, 2),
                             testing::uniform(g, -3, 3));
  }
}

TEST(Partials, RadialStructure) {
  auto g = testing::rng(19);
  const RadialWeight w = RadialWeight(parse_expression("1 + z^2 * exp(-z)"));
  for (int i = 0; i < 100; ++i) {
    const double x = testing::uniform(g, -2, 2), y = testing::uniform(g, -2, 2);
    const ELPartials d = lagrangian_partials_cartesian({x, y}, testing::uniform(g, -4, 4), w);
    EXPECT_NEAR(d.N * x - d.M * y, 0.0, 1e-14 * (1.0 + std::abs(d.N * x)));
  }
}

TEST(Clairaut, Examples) {
  const RadialWeight unit = RadialWeight::power_law(0.0);
  EXPECT_EQ(clairaut_constant(1.7, 0.0, RadialWeight::power_law(2.0)), 0.0);
  EXPECT_EQ(clairaut_constant(2.0, std::numeric_limits<double>::infinity(), unit), 2.0);
  const ExtremalSpec spec(RadialWeight::power_law(1.5), 1.3);
  EXPECT_NEAR(clairaut_constant(spec.z_turn(), std::numeric_limits<double>::infinity(),
                                spec.weight()),
              1.0 / 1.3, 1e-10);
}

// The slope dtheta/dr and the tangent-radius angle alpha describe the same
// tangent: tan(alpha) = r dtheta/dr.
TEST(Clairaut, AngleAndSlopeFormsAgree) {
  auto g = testing::rng(23);
  for (int i = 0; i < 200; ++i) {
    const RadialWeight w = RadialWeight::power_law(testing::uniform(g, -1, 3));
    const double r = testing::uniform(g, 0.1, 4.0);
    const double alpha = testing::uniform(g, 0.01, kPi / 2 - 0.01);
    const double slope = std::tan(alpha) / r;
    EXPECT_NEAR(clairaut_constant(r, slope, w), clairaut_constant_from_angle(r, alpha, w),
                1e-12 * (1.0 + w.v(r) * r));
  }
}

std::vector<CartesianPoint> line_samples(std::size_t n) {
  std::vector<CartesianPoint> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = {static_cast<double>(i) / (n - 1), 0.5};
  return s;
}

// lambda = 1, n = 1 closed-form curve, uniform in psi over [-1, 1].
std::vector<CartesianPoint> hyperbola_samples(std::size_t n) {
  const PowerLawCurve c(1.0, 1.0);
  std::vector<CartesianPoint> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = to_cartesian(power_law_point(c, -1.0 + 2.0 * i / (n - 1)));
  }
  return s;
}

TEST(Residual, StraightLineIsExtremal) {
  const auto s = line_samples(101);
  const RadialWeight w = RadialWeight::power_law(0.0);
  for (double r : el_residual(s, w)) EXPECT_LE(std::abs(r), 1e-12);
  for (double r : beltrami_residual(s, w)) EXPECT_LE(std::abs(r), 1e-12);
}

TEST(Residual, SecondOrderConvergence) {
  const RadialWeight w = RadialWeight::power_law(1.0);
  const auto coarse = hyperbola_samples(101);
  const auto fine = hyperbola_samples(201);
  const double el_ratio = max_interior_residual(el_residual(coarse, w)) /
                          max_interior_residual(el_residual(fine, w));
  const double bt_ratio = max_interior_residual(beltrami_residual(coarse, w)) /
                          max_interior_residual(beltrami_residual(fine, w));
  EXPECT_GE(el_ratio, 3.5);
  EXPECT_GE(bt_ratio, 3.5);
}

TEST(Residual, CircleIsNotExtremal) {
  // z = 1 arc with v = z: v z sin(alpha) is constant but d(v z)/dz != 0.
  std::vector<CartesianPoint> s(101);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = to_cartesian({-0.8 + 1.6 * i / 100.0, 1.0});
  EXPECT_GT(max_interior_residual(el_residual(s, RadialWeight::power_law(1.0))), 1e-3);
}

TEST(Residual, BeltramiFluxIdentity) {
  // V - P p = v / sqrt(1 + p^2).
  const RadialWeight w = RadialWeight::power_law(1.0);
  const auto s = hyperbola_samples(51);
  const auto slopes = finite_difference_slopes(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const ELPartials d = lagrangian_partials_cartesian(s[i], slopes[i], w);
    const double v = w.v(std::hypot(s[i].x, s[i].y));
    EXPECT_NEAR(d.V - d.P * slopes[i], v / std::sqrt(1.0 + slopes[i] * slopes[i]), 1e-14);
  }
}

TEST(Residual, RequiresGraph) {
  auto s = line_samples(10);
  std::swap(s[3], s[4]);
  try {
    el_residual(s, RadialWeight::power_law(0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonMonotoneAbscissa);
  }
  EXPECT_THROW(beltrami_residual(line_samples(4), RadialWeight::power_law(0.0)), Error);
}

// The reduction chain on a traced extremal: y dx - x dy = v z dp / (q (1 + p^2))
// and p = tan(omega) with omega = arctan(t) - phi, t = dz / (z dphi).
TEST(ReductionIdentities, HoldOnClosedFormCurve) {
  const double lambda = 2.0, n = 1.5;
  const PowerLawCurve c(lambda, n);
  const RadialWeight w = RadialWeight::power_law(lambda);
  auto point = [&](double psi) { return to_cartesian(power_law_point(c, psi)); };
  const double h = 1e-4;
  for (double psi = -1.2; psi <= 1.2; psi += 0.1) {
    const CartesianPoint m = point(psi), a = point(psi - h), b = point(psi + h);
    const CartesianPoint a2 = point(psi - 2 * h), b2 = point(psi + 2 * h);
    const double dx = (a2.x - 8 * a.x + 8 * b.x - b2.x) / (12 * h);
    const double dy = (a2.y - 8 * a.y + 8 * b.y - b2.y) / (12 * h);
    const double p = dy / dx;
    auto slope_at = [&](double s) {
      const CartesianPoint l = point(s - h), r = point(s + h);
      return (r.y - l.y) / (r.x - l.x);
    };
    const double dp = (slope_at(psi + h) - slope_at(psi - h)) / (2 * h);
    const double z = std::hypot(m.x, m.y);
    const double lhs = m.y * dx - m.x * dy;
    const double rhs = w.v(z) * z * dp / (w.q(z) * (1.0 + p * p));
    EXPECT_NEAR(lhs, rhs, 1e-6 * (1.0 + std::abs(lhs))) << "psi=" << psi;

    const PolarPoint pp = power_law_point(c, psi);
    const PolarPoint pa = power_law_point(c, psi - h), pb = power_law_point(c, psi + h);
    const double t = (pb.z - pa.z) / (pp.z * (pb.phi - pa.phi));
    const double omega = std::atan(t) - pp.phi;
    EXPECT_NEAR(std::tan(omega), p, 1e-6 * (1.0 + std::abs(p))) << "psi=" << psi;
  }
}

}  // namespace
}  // namespace radex
