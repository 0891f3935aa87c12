#include "radex/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>

#include "radex/errors.hpp"

namespace radex {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw Error(ErrorKind::Domain, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num = g != 0 ? n / g : 0;
  den = g != 0 ? d / g : 1;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}

namespace {

std::int64_t parse_int(std::string_view text, std::size_t base_offset) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw ParseError(base_offset + static_cast<std::size_t>(ptr - first),
                     {"integer"}, "malformed rational '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError(0, {"integer"}, "empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash), 0),
                    parse_int(text.substr(slash + 1), slash + 1));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 15) {
      throw ParseError(dot + 16, {"at most 15 fraction digits"}, "decimal too long");
    }
    const bool negative = !whole.empty() && whole.front() == '-';
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::int64_t int_part = 0;
    if (!whole.empty() && whole != "-" && whole != "+") int_part = parse_int(whole, 0);
    const std::int64_t frac_part = frac.empty() ? 0 : parse_int(frac, dot + 1);
    if (!frac.empty() && (frac.front() == '-' || frac.front() == '+')) {
      throw ParseError(dot + 1, {"digit"}, "malformed decimal");
    }
    std::int64_t magnitude = (int_part < 0 ? -int_part : int_part) * scale + frac_part;
    return Rational(negative ? -magnitude : magnitude, scale);
  }
  return Rational(parse_int(text, 0));
}

}  // namespace radex
