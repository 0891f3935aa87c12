#pragma once

#include <algorithm>
#include <cstddef>
#include <span>

namespace radex {

// Derivative at xs[i] of the Lagrange polynomial through `points`
// consecutive nodes around i (shifted inward at the ends). Works on
// nonuniform grids; accuracy order is points - 1.
inline double lagrange_derivative(std::span<const double> xs, std::span<const double> ys,
                                  std::size_t i, std::size_t points = 5) {
  const std::size_t n = xs.size();
  points = std::min(points, n);
  const std::size_t half = points / 2;
  std::size_t first = i >= half ? i - half : 0;
  first = std::min(first, n - points);
  const double x0 = xs[i];
  double result = 0.0;
  for (std::size_t j = first; j < first + points; ++j) {
    // d/dx of the j-th basis polynomial at x0.
    double denom = 1.0;
    for (std::size_t m = first; m < first + points; ++m) {
      if (m != j) denom *= xs[j] - xs[m];
    }
    double numer = 0.0;
    for (std::size_t k = first; k < first + points; ++k) {
      if (k == j) continue;
      double prod = 1.0;
      for (std::size_t m = first; m < first + points; ++m) {
        if (m != j && m != k) prod *= x0 - xs[m];
      }
      numer += prod;
    }
    result += ys[j] * numer / denom;
  }
  return result;
}

}  // namespace radex
