#include "radex/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <vector>

#include "radex/errors.hpp"

namespace radex {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PowerLawCurve::PowerLawCurve(double lambda_, double n_, double phi0_)
    : lambda(lambda_), n(n_), phi0(phi0_) {
  if (lambda == -1.0) {
    throw Error(ErrorKind::Domain, "lambda = -1 has no psi-parametrization; use log_spiral_point");
  }
  if (!(n > 0.0)) throw Error(ErrorKind::Domain, "n must be > 0, got " + num(n));
}

double PowerLawCurve::z_turn() const { return std::pow(n, -1.0 / (lambda + 1.0)); }

PolarPoint power_law_point(const PowerLawCurve& c, double psi) {
  if (!(std::abs(psi) < 0.5 * std::numbers::pi)) {
    throw Error(ErrorKind::Domain, "|psi| must be < pi/2, got " + num(psi));
  }
  const double k = c.lambda + 1.0;
  return {c.phi0 + psi / k, std::pow(c.n * std::cos(psi), -1.0 / k)};
}

double psi_from_z(const PowerLawCurve& c, double z) {
  if (!(z > 0.0)) throw Error(ErrorKind::Domain, "z must be > 0");
  // w = n z^(lambda+1) = 1 / cos(psi)
  const double w = c.n * std::pow(z, c.lambda + 1.0);
  const double excess = w - 1.0;
  // Within a few ulps of the turning radius psi is pure rounding noise.
  if (std::abs(excess) <= 4.0 * std::numeric_limits<double>::epsilon()) return 0.0;
  if (excess < 0.0) {
    if (excess < -1e-14) {
      throw Error(ErrorKind::Domain,
                  "z=" + num(z) + " is on the far side of the turning radius z*=" + num(c.z_turn()));
    }
    return 0.0;
  }
  return std::atan(std::sqrt(excess * (w + 1.0)));
}

PolarPoint log_spiral_point(double n, double z0, double phi) {
  if (!(n >= 1.0)) {
    throw Error(ErrorKind::Domain, "lambda = -1 extremals need n >= 1, got " + num(n));
  }
  if (!(z0 > 0.0)) throw Error(ErrorKind::Domain, "z0 must be > 0");
  const double t = std::sqrt((n - 1.0) * (n + 1.0));
  return {phi, z0 * std::exp(t * phi)};
}

namespace {

constexpr double kTangentStep = 1e-3;

// `scale(t)` shrinks the stencil where the parametrization steepens.
template <typename Curve, typename Scale>
TraceResult sample_curve(Curve&& curve, Scale&& scale, double lo, double hi,
                         std::size_t num_samples, double weight_lambda, double n) {
  if (num_samples < 3) throw Error(ErrorKind::Domain, "need >= 3 samples");
  if (!(hi > lo)) throw Error(ErrorKind::Domain, "empty parameter range");
  const RadialWeight w = RadialWeight::power_law(weight_lambda);
  TraceResult out;
  out.samples.reserve(num_samples);
  out.clairaut_deviation.reserve(num_samples);
  // Keep the five-point stencil inside the parameter domain.
  const double h = std::min(kTangentStep, 0.25 * (hi - lo) / static_cast<double>(num_samples));
  for (std::size_t j = 0; j < num_samples; ++j) {
    const double t = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(num_samples - 1);
    const PolarPoint pt = curve(t);
    const double sine = tangent_radius_sine(curve, t, h * scale(t));
    out.samples.push_back(pt);
    out.clairaut_deviation.push_back(std::abs(w.v(pt.z) * pt.z * sine - 1.0 / n) * n);
    if (pt.z < out.samples[out.turning_index].z) out.turning_index = j;
  }
  out.z_turn = out.samples[out.turning_index].z;
  return out;
}

}  // namespace

TraceResult trace_power_law(const PowerLawCurve& c, double psi_lo, double psi_hi,
                            std::size_t num_samples) {
  const double limit = 0.5 * std::numbers::pi - 4.0 * kTangentStep;
  if (!(psi_lo > -limit && psi_hi < limit)) {
    throw Error(ErrorKind::Domain, "psi range must lie inside (-pi/2, pi/2) with margin " +
                                       num(4.0 * kTangentStep));
  }
  auto curve = [&](double psi) { return power_law_point(c, psi); };
  auto scale = [&](double psi) { return std::cos(psi) * std::min(1.0, std::abs(c.lambda + 1.0)); };
  TraceResult r = sample_curve(curve, scale, psi_lo, psi_hi, num_samples, c.lambda, c.n);
  r.z_turn = c.z_turn();
  return r;
}

TraceResult trace_log_spiral(double n, double z0, double phi_lo, double phi_hi,
                             std::size_t num_samples) {
  log_spiral_point(n, z0, 0.0);
  auto curve = [&](double phi) { return log_spiral_point(n, z0, phi); };
  return sample_curve(curve, [](double) { return 1.0; }, phi_lo, phi_hi, num_samples, -1.0, n);
}

namespace {

std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Re((y + i x)^k) expanded: sum over even j of C(k, j) y^(k-j) (i x)^j.
std::string real_part_polynomial(int k) {
  std::string out;
  for (int j = 0; j <= k; j += 2) {
    const std::int64_t coeff = binomial(k, j) * ((j / 2) % 2 == 0 ? 1 : -1);
    std::string term;
    const std::int64_t mag = coeff < 0 ? -coeff : coeff;
    if (mag != 1) term += std::to_string(mag) + "*";
    auto power = [](const char* var, int e) -> std::string {
      if (e == 0) return "";
      if (e == 1) return var;
      return std::string(var) + "^" + std::to_string(e);
    };
    std::string y = power("y", k - j);
    std::string x = power("x", j);
    term += y;
    if (!y.empty() && !x.empty()) term += "*";
    term += x;
    if (term.empty() || term.back() == '*') term += "1";
    if (out.empty()) {
      out = coeff < 0 ? "-" + term : term;
    } else {
      out += coeff < 0 ? " - " + term : " + " + term;
    }
  }
  return out;
}

}  // namespace

AlgebraicRelation is_algebraic(const Rational& lambda) {
  const Rational k = lambda + Rational(1);
  if (k.num == 0) {
    throw Error(ErrorKind::Domain,
                "lambda = -1 is excluded (logarithmic spirals, not algebraic in this form)");
  }
  std::string exponent = k.is_integer() ? std::to_string(k.num) : "(" + k.str() + ")";
  std::string desc = "z^" + exponent + " * cos(" + exponent + "*(phi - phi0)) = 1/n";
  if (k.is_integer() && k.num > 0 && k.num <= 12) {
    desc += "; with phi0 = 0: " + real_part_polynomial(static_cast<int>(k.num)) + " = 1/n";
    if (k.num == 1) desc += " (straight line)";
  } else if (k.is_integer()) {
    desc += "; with phi0 = 0: Re((y + i*x)^" + std::to_string(k.num) + ") = 1/n";
  } else {
    desc += "; with w = (y + i*x)^(1/" + std::to_string(k.den) + "): Re(w^" +
            std::to_string(k.num) + ") = 1/n and w^" + std::to_string(k.den) +
            " = y + i*x, a polynomial system in x, y and w";
  }
  return {true, desc};
}

double algebraic_residual(const PowerLawCurve& c, PolarPoint pt) {
  const double k = c.lambda + 1.0;
  return std::pow(pt.z, k) * std::cos(k * (pt.phi - c.phi0)) - 1.0 / c.n;
}

}  // namespace radex
