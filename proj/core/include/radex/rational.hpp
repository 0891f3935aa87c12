#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace radex {

// Exact rational a/b in lowest terms with b > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return den == 1; }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend Rational operator+(const Rational& a, const Rational& b);
};

// Accepts "a", "a/b" and finite decimals such as "-0.25"; throws ParseError.
Rational parse_rational(std::string_view text);

}  // namespace radex
