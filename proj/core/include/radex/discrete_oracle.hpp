#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "radex/extremal_core.hpp"
#include "radex/weights.hpp"

namespace radex {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Polyline with fixed endpoints; the decision variables are the interior
// vertices.
class Polyline {
 public:
  // Throws DomainError for fewer than 2 vertices or repeated consecutive
  // vertices.
  explicit Polyline(std::vector<CartesianPoint> vertices);

  // Straight chord from a to b split into `segments` equal pieces.
  static Polyline chord(CartesianPoint a, CartesianPoint b, std::size_t segments);

  const std::vector<CartesianPoint>& vertices() const { return vertices_; }
  std::size_t segments() const { return vertices_.size() - 1; }
  std::size_t interior_count() const { return vertices_.size() - 2; }

  // Adds the displacement to interior vertex i (0-based among interior
  // vertices).
  void displace_interior(std::size_t i, Vec2 d);

 private:
  std::vector<CartesianPoint> vertices_;
};

// Sum over segments of v(|midpoint|) * |segment|, in vertex order.
double functional_value(const Polyline& pl, const RadialWeight& w);

// Exact gradient of functional_value with respect to each interior vertex.
std::vector<Vec2> gradient(const Polyline& pl, const RadialWeight& w);

enum class Descent {
  // Interior vertices move only perpendicular to the endpoint chord, so the
  // polyline stays a graph over the chord with its initial abscissae. Needs
  // the sought curve to be such a graph.
  ChordNormal,
  // Full gradient. The midpoint rule makes the functional concave in the
  // tangential spacing for most weights, so vertices can drift together
  // until a segment collapses.
  Full,
};

struct MinimizeOptions {
  std::size_t max_iters = 200000;
  double grad_tol = 1e-7;
  bool record_history = false;
  Descent descent = Descent::ChordNormal;
};

struct MinimizeResult {
  Polyline polyline;
  double initial_value = 0.0;
  double value = 0.0;
  // Largest component of the descent direction at exit.
  double max_gradient = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  // functional_value after each accepted step, when requested.
  std::vector<double> history;
};

// Gradient descent with Armijo backtracking. Stops once the largest component
// of the descent direction is <= grad_tol or after max_iters steps. Throws StalledDescent
// after 50 consecutive rejected trial steps, DomainViolation if a trial step
// leaves the weight's domain.
MinimizeResult minimize(const Polyline& pl, const RadialWeight& w, const MinimizeOptions& opts);

inline MinimizeResult minimize(const Polyline& pl, const RadialWeight& w, std::size_t max_iters,
                               double grad_tol) {
  return minimize(pl, w, MinimizeOptions{max_iters, grad_tol, false, Descent::ChordNormal});
}

}  // namespace radex
