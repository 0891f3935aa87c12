#pragma once

#include <string>

#include "radex/extremal_core.hpp"
#include "radex/rational.hpp"
#include "radex/reduced_ode.hpp"

namespace radex {

// Extremal of v = z^lambda in the psi-parametrization
//   z = (n cos psi)^(-1/(lambda+1)),  phi = phi0 + psi / (lambda+1),
// where tan(psi) = sqrt(n^2 z^(2 lambda + 2) - 1). For lambda < -1 the map
// runs the other way and z* is the largest radius on the curve.
struct PowerLawCurve {
  double lambda = 0.0;
  double n = 1.0;
  double phi0 = 0.0;

  PowerLawCurve(double lambda, double n, double phi0 = 0.0);

  double z_turn() const;
};

// |psi| < pi/2, otherwise DomainError.
PolarPoint power_law_point(const PowerLawCurve& c, double psi);

// psi in [0, pi/2) on the outgoing branch. DomainError when n z^(lambda+1) < 1.
double psi_from_z(const PowerLawCurve& c, double z);

// Degenerate lambda = -1 family: v z is constant, so t = sqrt(n^2 - 1) is
// constant and dz = t z dphi integrates to z = z0 exp(sqrt(n^2 - 1) phi).
// n = 1 gives the circle z = z0. DomainError for n < 1.
PolarPoint log_spiral_point(double n, double z0, double phi);

// Samples uniform in psi over [psi_lo, psi_hi]. Clairaut deviations use
// finite-difference tangents of the parametrization, so they are an
// independent check of the first integral.
TraceResult trace_power_law(const PowerLawCurve& c, double psi_lo, double psi_hi,
                            std::size_t num_samples);

// Spiral samples uniform in phi over [phi_lo, phi_hi], with finite-difference
// Clairaut deviations against 1/n.
TraceResult trace_log_spiral(double n, double z0, double phi_lo, double phi_hi,
                             std::size_t num_samples);

struct AlgebraicRelation {
  bool algebraic = false;
  std::string description;
};

// For rational lambda = a/b (not -1) the curve obeys
//   z^(lambda+1) cos((lambda+1)(phi - phi0)) = 1/n,
// which for integer lambda+1 = k is the polynomial Re((y + i x)^k) = 1/n in
// the pose phi0 = 0. Throws DomainError for lambda = -1.
AlgebraicRelation is_algebraic(const Rational& lambda);

// Left side minus right side of the relation above at a point.
double algebraic_residual(const PowerLawCurve& c, PolarPoint pt);

}  // namespace radex
