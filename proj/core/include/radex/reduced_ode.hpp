#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "radex/extremal_core.hpp"
#include "radex/weights.hpp"

namespace radex {

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

// z* with n v(z*) z* = 1 inside the bracket; bisection with safeguarded
// secant steps. Throws NoBracket, or TangentialTurningPoint unless
// d/dz (n v z) > 1e-8 at the root.
double turning_radius(const RadialWeight& w, double n, Bracket bracket);

// Geometric scan outward from z = 1 for the first sign change of n v z - 1.
Bracket find_turning_bracket(const RadialWeight& w, double n);

// One extremal: weight, first-integral constant, pose of the turning point
// and sense of increasing phi. A negative n is normalized to |n| with the
// orientation flipped.
class ExtremalSpec {
 public:
  ExtremalSpec(RadialWeight weight, double n, double phi0 = 0.0, int orientation = +1,
               std::optional<Bracket> bracket = std::nullopt);

  const RadialWeight& weight() const { return weight_; }
  double n() const { return n_; }
  double phi0() const { return phi0_; }
  int orientation() const { return orientation_; }
  double z_turn() const { return z_turn_; }
  // d/dz (n v z) at the turning radius; strictly positive.
  double turning_slope() const { return turning_slope_; }

 private:
  RadialWeight weight_;
  double n_;
  double phi0_;
  int orientation_;
  double z_turn_;
  double turning_slope_;
};

// dphi/dz = 1 / (z sqrt(n^2 v^2 z^2 - 1)). Throws ForbiddenRegion when
// n v z <= 1.
double dphi_dz(double z, const ExtremalSpec& spec);

inline constexpr double kDefaultTol = 1e-12;

// Signed integral of dphi/dz from z_from to z_to, both >= z*, with absolute
// error <= tol in [1e-14, 1e-3]. Integrates in s = sqrt(z - z*) so the
// inverse-square-root singularity at z* disappears.
double integrate_phi(const ExtremalSpec& spec, double z_from, double z_to,
                     double tol = kDefaultTol);

// phi at radius z on branch +1 (after the turning point) or -1 (before it).
double branch_phi(const ExtremalSpec& spec, double z, int branch, double tol = kDefaultTol);

enum class Spacing {
  CosineZ,    // z-grid clustered at z*
  UniformPhi, // equal angular steps
};

struct TraceResult {
  std::vector<PolarPoint> samples;
  // |v z sin(alpha) - 1/n| * n at each sample.
  std::vector<double> clairaut_deviation;
  double z_turn = 0.0;
  // Index of the shared turning sample; samples before it form the incoming
  // branch, samples after it the outgoing one.
  std::size_t turning_index = 0;
};

// Both branches, z_max -> z* -> z_max, num_samples per branch sharing the
// turning sample (2 num_samples - 1 in total). phi increases along the
// sample order when orientation is +1.
TraceResult trace_extremal(const ExtremalSpec& spec, double z_max, std::size_t num_samples,
                           double tol = kDefaultTol, Spacing spacing = Spacing::CosineZ);

}  // namespace radex
