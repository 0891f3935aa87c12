#include "radex/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "radex/errors.hpp"

namespace radex {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Spec whose turning radius lies in (domain_min, z_min]; ForbiddenRegion
// when n is too small for the turning circle to fit inside both endpoints.
ExtremalSpec spec_for(double n, const BvpProblem& prob) {
  const RadialWeight& w = prob.weight;
  const double z_min = std::min(prob.a.z, prob.b.z);
  const double g_min = n * w.v(z_min) * z_min - 1.0;
  if (g_min < 0.0) {
    throw Error(ErrorKind::ForbiddenRegion, "endpoint radius " + num(z_min) +
                                                " lies inside the turning radius for n=" + num(n));
  }
  if (g_min == 0.0) return ExtremalSpec(w, n, 0.0, 1, Bracket{z_min, z_min});
  // Walk inward until n v z - 1 changes sign.
  double lo = z_min;
  for (int i = 0; i < 2100; ++i) {
    const double next = w.domain_min() + 0.5 * (lo - w.domain_min());
    if (!(next > w.domain_min()) || next == lo) break;
    lo = next;
    if (n * w.v(lo) * lo - 1.0 <= 0.0) return ExtremalSpec(w, n, 0.0, 1, Bracket{lo, z_min});
  }
  throw Error(ErrorKind::NoBracket, "no turning radius below z=" + num(z_min) + " for n=" + num(n));
}

}  // namespace

double min_admissible_n(const BvpProblem& prob) {
  const double z_min = std::min(prob.a.z, prob.b.z);
  return 1.0 / (prob.weight.v(z_min) * z_min);
}

double angular_span(double n, const BvpProblem& prob, double tol) {
  const ExtremalSpec spec = spec_for(n, prob);
  const double zt = spec.z_turn();
  if (prob.same_branch) {
    return std::abs(integrate_phi(spec, prob.a.z, prob.b.z, tol));
  }
  return integrate_phi(spec, zt, prob.a.z, tol) + integrate_phi(spec, zt, prob.b.z, tol);
}

ExtremalSpec BvpSolution::spec(const RadialWeight& w) const {
  return ExtremalSpec(w, n, phi0, orientation, Bracket{z_turn * (1.0 - 1e-9), z_turn * (1.0 + 1e-9)});
}

BvpSolution solve_n(const BvpProblem& prob, double target_span, Bracket n_bracket, double tol,
                    double quad_tol) {
  double lo = std::min(n_bracket.lo, n_bracket.hi);
  double hi = std::max(n_bracket.lo, n_bracket.hi);
  if (!(lo > 0.0)) throw Error(ErrorKind::Domain, "n bracket must be positive");
  double f_lo = angular_span(lo, prob, quad_tol) - target_span;
  double f_hi = angular_span(hi, prob, quad_tol) - target_span;
  if ((f_lo > 0.0 && f_hi > 0.0) || (f_lo < 0.0 && f_hi < 0.0)) {
    throw Error(ErrorKind::NoBracket, "angular span minus target has the same sign at n=" +
                                          num(lo) + " and n=" + num(hi));
  }
  double n = std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
  double f = std::abs(f_lo) <= std::abs(f_hi) ? f_lo : f_hi;
  for (int iter = 0; iter < 200 && std::abs(f) > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = angular_span(mid, prob, quad_tol) - target_span;
    n = mid;
    f = f_mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }

  const ExtremalSpec spec = spec_for(n, prob);
  BvpSolution sol;
  sol.n = n;
  sol.z_turn = spec.z_turn();
  sol.span = f + target_span;
  const double sweep_a = integrate_phi(spec, sol.z_turn, prob.a.z, quad_tol);
  const double sweep_b = integrate_phi(spec, sol.z_turn, prob.b.z, quad_tol);
  if (!prob.same_branch) {
    // a on the incoming branch, b on the outgoing one.
    sol.orientation = prob.b.phi >= prob.a.phi ? 1 : -1;
    sol.phi0 = 0.5 * ((prob.a.phi + sol.orientation * sweep_a) +
                      (prob.b.phi - sol.orientation * sweep_b));
  } else {
    // Both on the outgoing branch; phi grows with z in the sense of travel.
    const bool a_inner = prob.a.z <= prob.b.z;
    const PolarPoint inner = a_inner ? prob.a : prob.b;
    const PolarPoint outer = a_inner ? prob.b : prob.a;
    const double sweep_inner = a_inner ? sweep_a : sweep_b;
    const double sweep_outer = a_inner ? sweep_b : sweep_a;
    sol.orientation = outer.phi >= inner.phi ? 1 : -1;
    sol.phi0 = 0.5 * ((inner.phi - sol.orientation * sweep_inner) +
                      (outer.phi - sol.orientation * sweep_outer));
  }
  return sol;
}

BvpSolution solve_bvp(const BvpProblem& prob, Bracket n_bracket, double tol, double quad_tol) {
  return solve_n(prob, std::abs(prob.b.phi - prob.a.phi), n_bracket, tol, quad_tol);
}

}  // namespace radex
