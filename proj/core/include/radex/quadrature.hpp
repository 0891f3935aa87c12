#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace radex::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t intervals = 0;
  bool converged = false;
};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]. Odd
// indices of kNodes are the Gauss abscissae.
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

template <typename F>
Segment gauss_kronrod_15(F&& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

// Globally adaptive bisection: the segment with the largest error estimate is
// split until the summed estimate falls below abs_tol or max_intervals
// segments are in use.
template <typename F>
Result integrate_adaptive(F&& f, double a, double b, double abs_tol,
                          std::size_t max_intervals = 10000) {
  if (a == b) return {0.0, 0.0, 0, true};
  std::vector<Segment> segments{gauss_kronrod_15(f, a, b)};
  double total = segments.front().value;
  double error = segments.front().error;

  // Error estimates below a few ulps of the running total are noise.
  auto target = [&] {
    return std::max(abs_tol, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(total));
  };

  while (error > target() && segments.size() < max_intervals) {
    auto worst = std::max_element(segments.begin(), segments.end(),
                                  [](const Segment& l, const Segment& r) { return l.error < r.error; });
    const double mid = 0.5 * (worst->a + worst->b);
    if (mid <= worst->a || mid >= worst->b) break;
    const Segment left = gauss_kronrod_15(f, worst->a, mid);
    const Segment right = gauss_kronrod_15(f, mid, worst->b);
    total += left.value + right.value - worst->value;
    error += left.error + right.error - worst->error;
    *worst = left;
    segments.push_back(right);
  }

  // Final sums in a fixed left-to-right order.
  std::sort(segments.begin(), segments.end(),
            [](const Segment& l, const Segment& r) { return l.a < r.a; });
  total = 0.0;
  error = 0.0;
  for (const Segment& s : segments) {
    total += s.value;
    error += s.error;
  }
  return {total, error, segments.size(), error <= target()};
}

}  // namespace radex::quadrature
