#pragma once

#include <cmath>

namespace radex {

// Forward-mode dual number a + b·ε with ε² = 0. Evaluating f(Dual{x, 1})
// yields {f(x), f'(x)}.
struct Dual {
  double value = 0.0;
  double deriv = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double v, double d = 0.0) : value(v), deriv(d) {}

  static constexpr Dual variable(double v) { return {v, 1.0}; }
};

constexpr Dual operator+(Dual a, Dual b) { return {a.value + b.value, a.deriv + b.deriv}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.value - b.value, a.deriv - b.deriv}; }
constexpr Dual operator-(Dual a) { return {-a.value, -a.deriv}; }
constexpr Dual operator*(Dual a, Dual b) {
  return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
}
constexpr Dual operator/(Dual a, Dual b) {
  return {a.value / b.value, (a.deriv * b.value - a.value * b.deriv) / (b.value * b.value)};
}

inline Dual exp(Dual a) {
  const double e = std::exp(a.value);
  return {e, e * a.deriv};
}
inline Dual log(Dual a) { return {std::log(a.value), a.deriv / a.value}; }
inline Dual sqrt(Dual a) {
  const double s = std::sqrt(a.value);
  return {s, a.deriv / (2.0 * s)};
}
inline Dual sin(Dual a) { return {std::sin(a.value), std::cos(a.value) * a.deriv}; }
inline Dual cos(Dual a) { return {std::cos(a.value), -std::sin(a.value) * a.deriv}; }

// a^b. A constant exponent uses the power rule so negative bases with
// integer exponents stay well defined.
inline Dual pow(Dual a, Dual b) {
  const double p = std::pow(a.value, b.value);
  if (b.deriv == 0.0) {
    if (a.deriv == 0.0) return {p, 0.0};
    if (b.value == 0.0) return {1.0, 0.0};
    return {p, b.value * std::pow(a.value, b.value - 1.0) * a.deriv};
  }
  return {p, p * (b.deriv * std::log(a.value) + b.value * a.deriv / a.value)};
}

}  // namespace radex
