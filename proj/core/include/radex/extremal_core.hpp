#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "radex/weights.hpp"

namespace radex {

// Angle convention throughout the library: phi is measured from the positive
// y-axis toward the positive x-axis, tan(phi) = x / y, so
//   x = z sin(phi),  y = z cos(phi),  theta_std = pi/2 - phi.

struct CartesianPoint {
  double x = 0.0;
  double y = 0.0;
};

struct PolarPoint {
  double phi = 0.0;
  double z = 0.0;
};

// V = v sqrt(1 + p^2) and its partials dV = M dx + N dy + P dp, with
// p = dy/dx.
struct ELPartials {
  double V = 0.0;
  double M = 0.0;
  double N = 0.0;
  double P = 0.0;
};

CartesianPoint to_cartesian(PolarPoint pt);

// Principal branch phi in (-pi, pi]. Throws DomainError at the pole.
PolarPoint to_polar(CartesianPoint pt);

ELPartials lagrangian_partials_cartesian(CartesianPoint pt, double slope, const RadialWeight& w);

// Conserved momentum of the polar Lagrangian v sqrt(1 + p^2 r^2), p = dtheta/dr:
//   P = v p r^2 / sqrt(1 + p^2 r^2).
// An infinite slope (tangent perpendicular to the radius) gives the limit
// ±v r.
double clairaut_constant(double r, double dtheta_dr, const RadialWeight& w);

// Same quantity from the angle alpha between tangent and radius: v r sin(alpha).
double clairaut_constant_from_angle(double r, double alpha, const RadialWeight& w);

// Residuals of N dx = dP and M dx = d(V - P p) on a function-graph segment
// (strictly increasing x, at least 5 samples). One entry per sample; the first
// and last entries use one-sided stencils. Slopes are second-order finite
// differences on the (possibly nonuniform) abscissa grid.
std::vector<double> el_residual(std::span<const CartesianPoint> samples, const RadialWeight& w);
std::vector<double> beltrami_residual(std::span<const CartesianPoint> samples,
                                      const RadialWeight& w);

// Max |r| over entries whose stencils are all central: the end samples and
// their neighbours (which see a one-sided end slope) are skipped.
double max_interior_residual(std::span<const double> residuals);

// sin of the angle between the radius and the tangent of a parametric curve
// t -> PolarPoint, with the tangent from a five-point central stencil.
template <typename Curve>
double tangent_radius_sine(Curve&& curve, double t, double h) {
  auto at = [&](double s) { return to_cartesian(curve(s)); };
  const CartesianPoint m2 = at(t - 2.0 * h), m1 = at(t - h), p1 = at(t + h), p2 = at(t + 2.0 * h);
  const double dx = (m2.x - 8.0 * m1.x + 8.0 * p1.x - p2.x) / (12.0 * h);
  const double dy = (m2.y - 8.0 * m1.y + 8.0 * p1.y - p2.y) / (12.0 * h);
  const CartesianPoint r = at(t);
  const double cross = r.x * dy - r.y * dx;
  return std::abs(cross) / (std::hypot(r.x, r.y) * std::hypot(dx, dy));
}

// Second-order finite-difference dy/dx at every sample.
std::vector<double> finite_difference_slopes(std::span<const CartesianPoint> samples);

}  // namespace radex
