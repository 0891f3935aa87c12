#include "radex/weights.hpp"

#include <cmath>
#include <cstdio>

#include "radex/errors.hpp"

namespace radex {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RadialWeight::RadialWeight(Kind kind, double domain_min)
    : kind_(std::move(kind)), domain_min_(domain_min) {
  if (!(domain_min >= 0.0)) {
    throw Error(ErrorKind::Domain, "weight domain_min must be >= 0, got " + num(domain_min));
  }
}

double RadialWeight::lambda() const {
  if (const auto* p = std::get_if<PowerLaw>(&kind_)) return p->lambda;
  throw Error(ErrorKind::Domain, "weight is not a power law: " + describe());
}

Dual RadialWeight::v_and_q(double z) const {
  if (!(z > domain_min_)) {
    throw Error(ErrorKind::Domain,
                "weight evaluated at z=" + num(z) + " <= domain_min=" + num(domain_min_));
  }
  Dual r;
  if (const auto* p = std::get_if<PowerLaw>(&kind_)) {
    if (p->lambda == 0.0) {
      r = Dual(1.0, 0.0);
    } else {
      r = Dual(std::pow(z, p->lambda), p->lambda * std::pow(z, p->lambda - 1.0));
    }
  } else {
    r = std::get<Expression>(kind_).evaluate(Dual::variable(z));
  }
  if (!std::isfinite(r.value) || !std::isfinite(r.deriv)) {
    throw Error(ErrorKind::Eval, "weight " + describe() + " is not finite at z=" + num(z));
  }
  if (r.value <= 0.0) {
    throw Error(ErrorKind::NonPositiveWeight,
                "weight " + describe() + " = " + num(r.value) + " <= 0 at z=" + num(z));
  }
  return r;
}

double RadialWeight::v(double z) const { return v_and_q(z).value; }

double RadialWeight::q(double z) const { return v_and_q(z).deriv; }

std::string RadialWeight::describe() const {
  if (const auto* p = std::get_if<PowerLaw>(&kind_)) return "z^" + num(p->lambda);
  return std::get<Expression>(kind_).render();
}

RadialWeight parse_weight(std::string_view text) {
  Expression e = parse_expression(text);
  if (auto lambda = e.power_law_exponent()) return RadialWeight::power_law(*lambda);
  return RadialWeight(std::move(e));
}

}  // namespace radex
