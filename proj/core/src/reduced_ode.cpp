#include "radex/reduced_ode.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "radex/errors.hpp"
#include "radex/quadrature.hpp"

namespace radex {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr double kRootTol = 1e-13;
constexpr double kMinTransversality = 1e-8;

}  // namespace

double turning_radius(const RadialWeight& w, double n, Bracket bracket) {
  if (!(n > 0.0)) throw Error(ErrorKind::Domain, "first-integral constant n must be > 0");
  auto g = [&](double z) { return n * w.v(z) * z - 1.0; };

  double a = std::min(bracket.lo, bracket.hi);
  double b = std::max(bracket.lo, bracket.hi);
  double ga = g(a);
  double gb = g(b);
  if ((ga > 0.0 && gb > 0.0) || (ga < 0.0 && gb < 0.0)) {
    throw Error(ErrorKind::NoBracket, "n v z - 1 has no sign change on [" + num(a) + ", " +
                                          num(b) + "] for n=" + num(n));
  }

  double root;
  const double analytic = w.is_power_law() ? std::pow(n, -1.0 / (w.lambda() + 1.0)) : 0.0;
  if (w.is_power_law() && w.lambda() != -1.0 && analytic >= a && analytic <= b &&
      std::abs(g(analytic)) <= kRootTol) {
    // n z^(lambda+1) = 1 in closed form; the same float the psi-parametrization uses.
    root = analytic;
  } else if (ga == 0.0) {
    root = a;
  } else if (gb == 0.0) {
    root = b;
  } else {
    // Illinois-flavoured regula falsi, falling back to bisection whenever
    // the secant step leaves the bracket or the bracket stops shrinking.
    double width = b - a;
    root = 0.5 * (a + b);
    for (int iter = 0; iter < 200; ++iter) {
      double c = b - gb * (b - a) / (gb - ga);
      if (!(c > a && c < b)) c = 0.5 * (a + b);
      double gc = g(c);
      root = c;
      if (std::abs(gc) <= 0.25 * kRootTol) break;
      if ((gc < 0.0) == (ga < 0.0)) {
        a = c;
        ga = gc;
      } else {
        b = c;
        gb = gc;
      }
      if (b - a > 0.5 * width) {
        const double m = 0.5 * (a + b);
        const double gm = g(m);
        root = m;
        if ((gm < 0.0) == (ga < 0.0)) {
          a = m;
          ga = gm;
        } else {
          b = m;
          gb = gm;
        }
      }
      width = b - a;
      if (width <= 4.0 * std::numeric_limits<double>::epsilon() * b) {
        root = std::abs(ga) < std::abs(gb) ? a : b;
        break;
      }
    }
  }

  const double residual = g(root);
  if (std::abs(residual) > kRootTol) {
    throw Error(ErrorKind::NoBracket, "turning radius did not converge: |n v z - 1| = " +
                                          num(std::abs(residual)) + " at z=" + num(root));
  }
  const Dual vq = w.v_and_q(root);
  const double slope = n * (vq.deriv * root + vq.value);
  if (!(slope > kMinTransversality)) {
    throw Error(ErrorKind::TangentialTurningPoint,
                "d/dz(n v z) = " + num(slope) + " at z*=" + num(root) +
                    " (need > 1e-8 for a transversal turning point)");
  }
  return root;
}

Bracket find_turning_bracket(const RadialWeight& w, double n) {
  if (!(n > 0.0)) throw Error(ErrorKind::Domain, "first-integral constant n must be > 0");
  auto g = [&](double z) { return n * w.v(z) * z - 1.0; };
  const double floor = w.domain_min();
  double z = std::max(1.0, 2.0 * floor);
  double gz = g(z);
  if (gz == 0.0) return {z, z};
  if (gz > 0.0) {
    for (int i = 0; i < 2100; ++i) {
      const double lower = floor + 0.5 * (z - floor);
      if (!(lower > floor) || lower == z) break;
      const double gl = g(lower);
      if (gl <= 0.0) return {lower, z};
      z = lower;
    }
  } else {
    for (int i = 0; i < 2100; ++i) {
      const double upper = 2.0 * z;
      if (!std::isfinite(upper)) break;
      const double gu = g(upper);
      if (gu >= 0.0) return {z, upper};
      z = upper;
    }
  }
  throw Error(ErrorKind::NoBracket,
              "no turning radius found for weight " + w.describe() + " and n=" + num(n));
}

ExtremalSpec::ExtremalSpec(RadialWeight weight, double n, double phi0, int orientation,
                           std::optional<Bracket> bracket)
    : weight_(std::move(weight)), n_(n), phi0_(phi0), orientation_(orientation >= 0 ? 1 : -1) {
  if (n_ == 0.0 || !std::isfinite(n_)) {
    throw Error(ErrorKind::Domain, "first-integral constant n must be finite and nonzero");
  }
  if (n_ < 0.0) {
    n_ = -n_;
    orientation_ = -orientation_;
  }
  const Bracket b = bracket ? *bracket : find_turning_bracket(weight_, n_);
  z_turn_ = turning_radius(weight_, n_, b);
  const Dual vq = weight_.v_and_q(z_turn_);
  turning_slope_ = n_ * (vq.deriv * z_turn_ + vq.value);
}

double dphi_dz(double z, const ExtremalSpec& spec) {
  const double h = spec.n() * spec.weight().v(z) * z;
  if (!(h > 1.0)) {
    throw Error(ErrorKind::ForbiddenRegion,
                "n v z = " + num(h) + " <= 1 at z=" + num(z) + " (inside the turning circle)");
  }
  return 1.0 / (z * std::sqrt((h - 1.0) * (h + 1.0)));
}

double integrate_phi(const ExtremalSpec& spec, double z_from, double z_to, double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-3)) {
    throw Error(ErrorKind::Domain, "quadrature tolerance " + num(tol) + " outside [1e-14, 1e-3]");
  }
  const double zt = spec.z_turn();
  for (double z : {z_from, z_to}) {
    if (!(z >= zt)) {
      throw Error(ErrorKind::ForbiddenRegion,
                  "z=" + num(z) + " lies inside the turning radius z*=" + num(zt));
    }
  }
  if (z_from == z_to) return 0.0;

  const double n = spec.n();
  const double slope = spec.turning_slope();
  const RadialWeight& w = spec.weight();
  // z = z* + s^2, dz = 2 s ds. Close to z* the excess n v z - 1 is
  // integrated from its derivative n (q z + v) instead of being formed by
  // cancellation; z* is taken as the exact root.
  auto growth = [&](double z) {
    const Dual vq = w.v_and_q(z);
    return n * (vq.deriv * z + vq.value);
  };
  auto excess_at = [&](double delta) {
    if (delta <= 1e-2 * zt) {
      constexpr double kNode = 0.7745966692414833770;  // sqrt(3/5)
      const double mid = zt + 0.5 * delta;
      const double half = 0.5 * delta;
      return half * (5.0 * growth(mid - kNode * half) + 8.0 * growth(mid) +
                     5.0 * growth(mid + kNode * half)) / 9.0;
    }
    return n * w.v(zt + delta) * (zt + delta) - 1.0;
  };
  auto integrand = [&](double s) {
    if (s == 0.0) return 2.0 / (zt * std::sqrt(2.0 * slope));
    const double delta = s * s;
    const double z = zt + delta;
    const double excess = excess_at(delta);
    return 2.0 * s / (z * std::sqrt(excess * (excess + 2.0)));
  };
  const double s_from = std::sqrt(z_from - zt);
  const double s_to = std::sqrt(z_to - zt);
  const auto lo = std::min(s_from, s_to);
  const auto hi = std::max(s_from, s_to);
  const quadrature::Result r = quadrature::integrate_adaptive(integrand, lo, hi, tol);
  if (!r.converged) {
    throw Error(ErrorKind::QuadratureFailure,
                "error estimate " + num(r.error) + " above tol " + num(tol) + " after " +
                    std::to_string(r.intervals) + " subintervals");
  }
  return s_to >= s_from ? r.value : -r.value;
}

double branch_phi(const ExtremalSpec& spec, double z, int branch, double tol) {
  const double sweep = integrate_phi(spec, spec.z_turn(), z, tol);
  return spec.phi0() + (branch >= 0 ? 1.0 : -1.0) * spec.orientation() * sweep;
}

namespace {

// Radius at which the swept angle from z* equals target, by safeguarded
// Newton in s = sqrt(z - z*).
double radius_for_sweep(const ExtremalSpec& spec, double target, double s_max, double tol) {
  const double zt = spec.z_turn();
  double lo = 0.0;
  double hi = s_max;
  double s = 0.5 * s_max;
  for (int iter = 0; iter < 100; ++iter) {
    const double z = zt + s * s;
    const double f = integrate_phi(spec, zt, z, tol) - target;
    if (std::abs(f) <= 4.0 * tol) return z;
    if (f > 0.0) {
      hi = s;
    } else {
      lo = s;
    }
    double step_s = s;
    if (s > 0.0) {
      const double deriv = 2.0 * s * dphi_dz(z, spec);
      step_s = s - f / deriv;
    }
    s = (step_s > lo && step_s < hi) ? step_s : 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * s_max) break;
  }
  return zt + s * s;
}

}  // namespace

TraceResult trace_extremal(const ExtremalSpec& spec, double z_max, std::size_t num_samples,
                           double tol, Spacing spacing) {
  if (num_samples < 3) throw Error(ErrorKind::Domain, "trace needs >= 3 samples per branch");
  const double zt = spec.z_turn();
  if (!(z_max > zt)) {
    throw Error(ErrorKind::Domain, "z_max=" + num(z_max) + " must exceed z*=" + num(zt));
  }
  const std::size_t k = num_samples;
  std::vector<double> radii(k), sweep(k);
  radii[0] = zt;
  sweep[0] = 0.0;
  if (spacing == Spacing::CosineZ) {
    for (std::size_t j = 1; j < k; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(k - 1);
      radii[j] = j + 1 == k ? z_max
                            : zt + (z_max - zt) * (1.0 - std::cos(0.5 * std::numbers::pi * t));
      sweep[j] = integrate_phi(spec, zt, radii[j], tol);
    }
  } else {
    const double total = integrate_phi(spec, zt, z_max, tol);
    const double s_max = std::sqrt(z_max - zt);
    radii[k - 1] = z_max;
    sweep[k - 1] = total;
    for (std::size_t j = 1; j + 1 < k; ++j) {
      sweep[j] = total * static_cast<double>(j) / static_cast<double>(k - 1);
      radii[j] = radius_for_sweep(spec, sweep[j], s_max, tol);
    }
  }

  const double n = spec.n();
  const double sense = spec.orientation();
  TraceResult out;
  out.z_turn = zt;
  out.turning_index = k - 1;
  out.samples.reserve(2 * k - 1);
  out.clairaut_deviation.reserve(2 * k - 1);
  std::vector<double> deviation(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double slope =
        j == 0 ? std::numeric_limits<double>::infinity() : dphi_dz(radii[j], spec);
    deviation[j] = std::abs(clairaut_constant(radii[j], slope, spec.weight()) - 1.0 / n) * n;
  }
  for (std::size_t j = k; j-- > 0;) {
    out.samples.push_back({spec.phi0() - sense * sweep[j], radii[j]});
    out.clairaut_deviation.push_back(deviation[j]);
  }
  for (std::size_t j = 1; j < k; ++j) {
    out.samples.push_back({spec.phi0() + sense * sweep[j], radii[j]});
    out.clairaut_deviation.push_back(deviation[j]);
  }
  return out;
}

}  // namespace radex
