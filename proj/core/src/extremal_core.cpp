#include "radex/extremal_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "radex/errors.hpp"

namespace radex {

CartesianPoint to_cartesian(PolarPoint pt) {
  return {pt.z * std::sin(pt.phi), pt.z * std::cos(pt.phi)};
}

PolarPoint to_polar(CartesianPoint pt) {
  if (pt.x == 0.0 && pt.y == 0.0) throw Error(ErrorKind::Domain, "to_polar at the pole");
  return {std::atan2(pt.x, pt.y), std::hypot(pt.x, pt.y)};
}

ELPartials lagrangian_partials_cartesian(CartesianPoint pt, double slope, const RadialWeight& w) {
  const double z = std::hypot(pt.x, pt.y);
  const Dual vq = w.v_and_q(z);
  const double root = std::sqrt(1.0 + slope * slope);
  return {
      .V = vq.value * root,
      .M = vq.deriv * pt.x * root / z,
      .N = vq.deriv * pt.y * root / z,
      .P = vq.value * slope / root,
  };
}

double clairaut_constant(double r, double dtheta_dr, const RadialWeight& w) {
  const double v = w.v(r);
  if (std::isinf(dtheta_dr)) return std::copysign(v * r, dtheta_dr);
  const double pr = dtheta_dr * r;
  return v * pr * r / std::sqrt(1.0 + pr * pr);
}

double clairaut_constant_from_angle(double r, double alpha, const RadialWeight& w) {
  return w.v(r) * r * std::sin(alpha);
}

namespace {

void require_graph(std::span<const CartesianPoint> s) {
  if (s.size() < 5) {
    throw Error(ErrorKind::NonMonotoneAbscissa,
                "residual needs >= 5 samples, got " + std::to_string(s.size()));
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!(s[i].x > s[i - 1].x)) {
      throw Error(ErrorKind::NonMonotoneAbscissa,
                  "abscissa not strictly increasing at sample " + std::to_string(i));
    }
  }
}

// Three-point first derivative of f at node i on a nonuniform grid, using
// nodes (a, b, c) around it; exact for quadratics.
double three_point(double xa, double fa, double xb, double fb, double xc, double fc, double x) {
  const double la = ((x - xb) + (x - xc)) / ((xa - xb) * (xa - xc));
  const double lb = ((x - xa) + (x - xc)) / ((xb - xa) * (xb - xc));
  const double lc = ((x - xa) + (x - xb)) / ((xc - xa) * (xc - xb));
  return la * fa + lb * fb + lc * fc;
}

// Difference of f across sample i scaled to the central width
// x[i+1] - x[i-1]; at the ends the one-sided derivative is scaled by the
// adjacent width pair so every entry approximates f' * dx.
template <typename F>
std::vector<double> residual_impl(std::span<const CartesianPoint> s, F&& pieces) {
  require_graph(s);
  const std::size_t n = s.size();
  const std::vector<double> slopes = finite_difference_slopes(s);
  std::vector<double> source(n), flux(n);
  for (std::size_t i = 0; i < n; ++i) pieces(s[i], slopes[i], source[i], flux[i]);

  std::vector<double> out(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double dx = s[i + 1].x - s[i - 1].x;
    out[i] = source[i] * dx - (flux[i + 1] - flux[i - 1]);
  }
  const double dx0 = s[2].x - s[0].x;
  const double d0 = three_point(s[0].x, flux[0], s[1].x, flux[1], s[2].x, flux[2], s[0].x);
  out[0] = (source[0] - d0) * dx0;
  const double dxn = s[n - 1].x - s[n - 3].x;
  const double dn = three_point(s[n - 3].x, flux[n - 3], s[n - 2].x, flux[n - 2], s[n - 1].x,
                                flux[n - 1], s[n - 1].x);
  out[n - 1] = (source[n - 1] - dn) * dxn;
  return out;
}

}  // namespace

std::vector<double> finite_difference_slopes(std::span<const CartesianPoint> s) {
  const std::size_t n = s.size();
  std::vector<double> p(n);
  if (n < 3) return p;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = std::clamp<std::size_t>(i, 1, n - 2);
    p[i] = three_point(s[c - 1].x, s[c - 1].y, s[c].x, s[c].y, s[c + 1].x, s[c + 1].y, s[i].x);
  }
  return p;
}

std::vector<double> el_residual(std::span<const CartesianPoint> samples, const RadialWeight& w) {
  return residual_impl(samples, [&](CartesianPoint pt, double p, double& source, double& flux) {
    const ELPartials d = lagrangian_partials_cartesian(pt, p, w);
    source = d.N;
    flux = d.P;
  });
}

std::vector<double> beltrami_residual(std::span<const CartesianPoint> samples,
                                      const RadialWeight& w) {
  return residual_impl(samples, [&](CartesianPoint pt, double p, double& source, double& flux) {
    const ELPartials d = lagrangian_partials_cartesian(pt, p, w);
    source = d.M;
    flux = d.V - d.P * p;
  });
}

double max_interior_residual(std::span<const double> residuals) {
  double m = 0.0;
  for (std::size_t i = 2; i + 2 < residuals.size(); ++i) m = std::max(m, std::abs(residuals[i]));
  return m;
}

}  // namespace radex
