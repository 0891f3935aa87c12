#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "radex/expression.hpp"

namespace radex {

struct PowerLaw {
  double lambda = 0.0;
};

// The radial weight v(z) with its exact derivative q(z) = dv/dz. Power laws
// are evaluated in closed form, parsed expressions through dual numbers.
class RadialWeight {
 public:
  using Kind = std::variant<PowerLaw, Expression>;

  explicit RadialWeight(Kind kind, double domain_min = 0.0);

  static RadialWeight power_law(double lambda) { return RadialWeight(PowerLaw{lambda}); }

  const Kind& kind() const { return kind_; }
  double domain_min() const { return domain_min_; }
  bool is_power_law() const { return std::holds_alternative<PowerLaw>(kind_); }
  // Throws DomainError unless is_power_law().
  double lambda() const;

  // Both return finite values or throw DomainError / NonPositiveWeight /
  // EvalError.
  double v(double z) const;
  double q(double z) const;
  Dual v_and_q(double z) const;

  std::string describe() const;

 private:
  Kind kind_;
  double domain_min_;
};

inline double eval_v(const RadialWeight& w, double z) { return w.v(z); }
inline double eval_q(const RadialWeight& w, double z) { return w.q(z); }

// "z^<number>" (optionally with a negated literal exponent) reduces to a
// PowerLaw; everything else stays an Expression.
RadialWeight parse_weight(std::string_view text);

}  // namespace radex
