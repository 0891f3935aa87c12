#pragma once

#include "radex/extremal_core.hpp"
#include "radex/reduced_ode.hpp"
#include "radex/weights.hpp"

namespace radex {

// Two endpoints for an extremal. same_branch is true when both lie on one
// side of the turning point (the turning point is not between them).
struct BvpProblem {
  PolarPoint a;
  PolarPoint b;
  RadialWeight weight;
  bool same_branch = false;
};

// Smallest n whose turning radius still reaches min(z_a, z_b):
// 1 / (v(z_min) z_min).
double min_admissible_n(const BvpProblem& prob);

// Total |dphi| between the endpoints along the extremal with constant n.
// Throws ForbiddenRegion when min(z_a, z_b) < z*(n).
double angular_span(double n, const BvpProblem& prob, double tol = kDefaultTol);

struct BvpSolution {
  double n = 0.0;
  double phi0 = 0.0;
  int orientation = 1;
  double z_turn = 0.0;
  double span = 0.0;

  ExtremalSpec spec(const RadialWeight& w) const;
};

// Bisection on n over the bracket until |angular_span(n) - target| <= tol.
// Throws NoBracket when the bracket ends do not straddle the target.
BvpSolution solve_n(const BvpProblem& prob, double target_span, Bracket n_bracket, double tol,
                    double quad_tol = 1e-13);

// solve_n with target |phi_b - phi_a|.
BvpSolution solve_bvp(const BvpProblem& prob, Bracket n_bracket, double tol,
                      double quad_tol = 1e-13);

}  // namespace radex
