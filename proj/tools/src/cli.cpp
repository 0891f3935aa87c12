#include "radex_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "radex/radex.hpp"
#include "radex_cli/render.hpp"

namespace radex::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WeightOptions {
  std::string lambda_text;
  std::string expression;
};

struct ParsedWeight {
  RadialWeight weight;
  std::optional<Rational> lambda;
  std::string source;
};

ParsedWeight resolve_weight(const WeightOptions& w) {
  const bool has_lambda = !w.lambda_text.empty();
  const bool has_expr = !w.expression.empty();
  if (has_lambda == has_expr) throw UsageError("give exactly one of --lambda or --weight");
  if (has_lambda) {
    Rational r;
    try {
      r = parse_rational(w.lambda_text);
    } catch (const Error& e) {
      throw UsageError(std::string("--lambda: ") + e.what());
    }
    return {RadialWeight::power_law(r.to_double()), r, "--lambda " + r.str()};
  }
  return {parse_weight(w.expression), std::nullopt, w.expression};
}

std::pair<double, double> parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError(std::string(flag) + " expects a:b");
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
    const double lo = std::stod(a, &used_a);
    const double hi = std::stod(b, &used_b);
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError(std::string(flag) + ": cannot parse '" + text + "'");
  }
}

std::vector<double> parse_list(const std::string& text, std::size_t count, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError(std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  if (out.size() != count) {
    throw UsageError(std::string(flag) + " expects " + std::to_string(count) +
                     " comma-separated numbers");
  }
  return out;
}

bool is_log_spiral(const ParsedWeight& w) {
  return w.weight.is_power_law() && w.weight.lambda() == -1.0;
}

Json weight_json(const ParsedWeight& w) {
  Json j = {{"weight", w.weight.describe()}};
  if (w.lambda) j["lambda"] = w.lambda->str();
  return j;
}

// Largest run of samples around the turning sample that is a graph over x
// once the turning point is rotated onto the +y axis.
std::optional<double> trace_el_residual(const TraceResult& trace, const RadialWeight& w,
                                        double phi0) {
  const auto& s = trace.samples;
  if (s.size() < 5) return std::nullopt;
  std::vector<CartesianPoint> pts(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) pts[i] = to_cartesian({s[i].phi - phi0, s[i].z});
  const std::size_t t = std::min(trace.turning_index, s.size() - 1);
  const bool increasing = t + 1 < s.size() ? pts[t + 1].x > pts[t].x : pts[t].x > pts[t - 1].x;
  if (!increasing) std::reverse(pts.begin(), pts.end());
  const std::size_t centre = increasing ? t : s.size() - 1 - t;
  std::size_t lo = centre, hi = centre;
  while (lo > 0 && pts[lo - 1].x < pts[lo].x) --lo;
  while (hi + 1 < pts.size() && pts[hi + 1].x > pts[hi].x) ++hi;
  if (hi - lo + 1 < 7) return std::nullopt;
  const std::span<const CartesianPoint> run(pts.data() + lo, hi - lo + 1);
  return max_interior_residual(el_residual(run, w));
}

double max_of(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, x);
  return m;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open --out " + path);
  f << text;
  if (!f) throw UsageError("failed writing --out " + path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<std::vector<CartesianPoint>> trace_branches(const TraceResult& trace) {
  std::vector<CartesianPoint> first, second;
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const CartesianPoint c = to_cartesian(trace.samples[i]);
    if (i <= trace.turning_index) first.push_back(c);
    if (i >= trace.turning_index) second.push_back(c);
  }
  std::vector<std::vector<CartesianPoint>> out;
  if (first.size() > 1) out.push_back(std::move(first));
  if (second.size() > 1) out.push_back(std::move(second));
  return out;
}

std::string render_trace(const std::string& format, const Json& spec, const TraceResult& trace,
                         const TraceDiagnostics& diag, bool draw_turning_circle) {
  if (format == "csv") return trace_csv(trace);
  if (format == "json") return dump(trace_json(spec, trace, diag));
  return curve_svg(trace_branches(trace), draw_turning_circle ? diag.z_turn : 0.0);
}

struct CommonOptions {
  WeightOptions weight;
  double n = 0.0;
  double z_max = 0.0;
  std::size_t samples = 200;
  std::string psi_range;
  std::string format = "csv";
  std::string out_path;
  double tol = kDefaultTol;
  double phi0 = 0.0;
  double z0 = 1.0;
  bool uniform_phi = false;
};

void add_weight_flags(CLI::App* cmd, WeightOptions& w) {
  cmd->add_option("--lambda", w.lambda_text, "power-law exponent a/b, v = z^lambda");
  cmd->add_option("--weight", w.expression,
                  "weight expression in z: + - * / ^, exp log sqrt sin cos");
}

void add_output_flags(CLI::App* cmd, CommonOptions& o, std::vector<std::string> formats) {
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember(std::move(formats)))
      ->capture_default_str();
  cmd->add_option("--out", o.out_path, "output file (default: stdout)");
}

// -- trace -----------------------------------------------------------------

int run_trace(const CommonOptions& o, std::ostream& out) {
  const ParsedWeight pw = resolve_weight(o.weight);
  if (!(o.n > 0.0 || o.n < 0.0)) throw UsageError("--n is required and must be nonzero");

  Json spec = weight_json(pw);
  spec["n"] = o.n;
  spec["phi0"] = o.phi0;
  spec["angle_convention"] = "phi from +y toward +x; theta_std = pi/2 - phi";

  TraceResult trace;
  bool turning_circle = true;
  double phi0 = o.phi0;
  if (is_log_spiral(pw)) {
    const auto [lo, hi] = o.psi_range.empty() ? std::pair{-1.0, 1.0} : parse_range(o.psi_range, "--psi-range");
    trace = trace_log_spiral(std::abs(o.n), o.z0, lo + o.phi0, hi + o.phi0, o.samples);
    spec["family"] = "log_spiral";
    spec["z0"] = o.z0;
    spec["phi_range"] = {lo, hi};
    spec["samples"] = o.samples;
    turning_circle = false;
  } else if (!o.psi_range.empty()) {
    if (!pw.weight.is_power_law()) throw UsageError("--psi-range needs a power-law weight");
    const auto [lo, hi] = parse_range(o.psi_range, "--psi-range");
    const PowerLawCurve curve(pw.weight.lambda(), std::abs(o.n), o.phi0);
    trace = trace_power_law(curve, lo, hi, o.samples);
    spec["family"] = "power_law_closed_form";
    spec["psi_range"] = {lo, hi};
    spec["samples"] = o.samples;
  } else {
    if (!(o.z_max > 0.0)) throw UsageError("--zmax is required");
    const ExtremalSpec es(pw.weight, o.n, o.phi0);
    trace = trace_extremal(es, o.z_max, o.samples, o.tol,
                           o.uniform_phi ? Spacing::UniformPhi : Spacing::CosineZ);
    spec["n"] = es.n();
    spec["orientation"] = es.orientation();
    spec["family"] = "quadrature";
    spec["z_max"] = o.z_max;
    spec["samples_per_branch"] = o.samples;
    spec["spacing"] = o.uniform_phi ? "uniform_phi" : "cosine_z";
    spec["tol"] = o.tol;
  }
  TraceDiagnostics diag{trace.z_turn, max_of(trace.clairaut_deviation),
                        trace_el_residual(trace, pw.weight, phi0)};
  emit(render_trace(o.format, spec, trace, diag, turning_circle), o.out_path, out);
  return kOk;
}

// -- check -----------------------------------------------------------------

struct CheckLine {
  std::string name;
  double value;
  std::optional<double> threshold;
};

int run_check(const CommonOptions& o, std::ostream& out) {
  const ParsedWeight pw = resolve_weight(o.weight);
  if (!(o.n > 0.0 || o.n < 0.0)) throw UsageError("--n is required and must be nonzero");
  std::vector<CheckLine> lines;

  if (is_log_spiral(pw)) {
    const double n = std::abs(o.n);
    const TraceResult trace = trace_log_spiral(n, o.z0, -1.0, 1.0, std::max<std::size_t>(o.samples, 3));
    lines.push_back({"max_clairaut_dev", max_of(trace.clairaut_deviation), 1e-8});
    const double rate = std::sqrt((n - 1.0) * (n + 1.0));
    double growth = 0.0;
    for (const PolarPoint& p : trace.samples) {
      const double ratio = log_spiral_point(n, o.z0, p.phi + 1.0).z / p.z;
      growth = std::max(growth, std::abs(ratio / std::exp(rate) - 1.0));
    }
    lines.push_back({"spiral_growth_rel_err", growth, 1e-12});
  } else {
    if (!(o.z_max > 0.0)) throw UsageError("--zmax is required");
    const ExtremalSpec es(pw.weight, o.n, o.phi0);
    const TraceResult trace = trace_extremal(es, o.z_max, o.samples, o.tol);
    const double zt = es.z_turn();
    const double n = es.n();
    lines.push_back({"turning_residual", std::abs(n * pw.weight.v(zt) * zt - 1.0), 1e-13});
    lines.push_back({"max_clairaut_dev", max_of(trace.clairaut_deviation), 1e-8});

    const auto& s = trace.samples;
    const std::size_t t = trace.turning_index;
    double mirror = 0.0;
    for (std::size_t j = 1; j <= t && t + j < s.size(); ++j) {
      mirror = std::max({mirror, std::abs(s[t - j].z - s[t + j].z),
                         std::abs((s[t - j].phi - es.phi0()) + (s[t + j].phi - es.phi0()))});
    }
    lines.push_back({"mirror_symmetry", mirror, 1e-8});

    // First integral v z = sqrt(1 + t^2) / n with t = (dz/dphi) / z from
    // finite differences of the samples.
    std::vector<double> phis(s.size()), zs(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      phis[i] = es.orientation() * s[i].phi;
      zs[i] = s[i].z;
    }
    double first_integral = 0.0;
    for (std::size_t i = 3; i + 3 < s.size(); ++i) {
      const double tt = lagrange_derivative(phis, zs, i, 7) / zs[i];
      const double lhs = pw.weight.v(zs[i]) * zs[i];
      const double rhs = std::sqrt(1.0 + tt * tt) / n;
      first_integral = std::max(first_integral, std::abs(lhs / rhs - 1.0));
    }
    lines.push_back({"first_integral_fd_rel", first_integral, 1e-6});

    if (pw.weight.is_power_law()) {
      const PowerLawCurve curve(pw.weight.lambda(), n, es.phi0());
      double agreement = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        // psi(z) has infinite slope at z*; compare away from it.
        if (s[i].z != zt && s[i].z < zt * (1.0 + 1e-6)) continue;
        const double sweep = std::abs(s[i].phi - es.phi0());
        const double closed = psi_from_z(curve, s[i].z) / (pw.weight.lambda() + 1.0);
        agreement = std::max(agreement, std::abs(sweep - closed));
      }
      lines.push_back({"closed_form_agreement", agreement, 10.0 * o.tol});
    }
    if (auto r = trace_el_residual(trace, pw.weight, es.phi0())) {
      lines.push_back({"max_el_residual", *r, std::nullopt});
    }
  }

  bool all_pass = true;
  Json checks = Json::array();
  std::ostringstream csv;
  csv << "check,value,threshold,status\n";
  for (const CheckLine& l : lines) {
    const bool pass = !l.threshold || l.value <= *l.threshold;
    all_pass = all_pass && pass;
    const char* status = !l.threshold ? "info" : pass ? "pass" : "fail";
    csv << l.name << ',' << format_double(l.value) << ','
        << (l.threshold ? format_double(*l.threshold) : "") << ',' << status << '\n';
    Json item = {{"name", l.name}, {"value", l.value}};
    if (l.threshold) {
      item["threshold"] = *l.threshold;
    } else {
      item["threshold"] = nullptr;
    }
    item["status"] = status;
    checks.push_back(std::move(item));
  }
  Json spec = weight_json(pw);
  spec["n"] = o.n;
  spec["z_max"] = o.z_max;
  spec["samples_per_branch"] = o.samples;
  spec["tol"] = o.tol;
  const std::string text = o.format == "json"
                               ? dump({{"spec", spec}, {"checks", checks}, {"pass", all_pass}})
                               : csv.str();
  emit(text, o.out_path, out);
  return all_pass ? kOk : kNumericalFailure;
}

// -- oracle ----------------------------------------------------------------

struct OracleOptions {
  std::size_t segments = 200;
  std::size_t iters = 200000;
  double grad_tol = 1e-7;
  bool full_gradient = false;
  std::string endpoints;
};

int run_oracle(const CommonOptions& o, const OracleOptions& oo, std::ostream& out) {
  const ParsedWeight pw = resolve_weight(o.weight);
  if (oo.endpoints.empty()) throw UsageError("--endpoints x1,y1,x2,y2 is required");
  const std::vector<double> e = parse_list(oo.endpoints, 4, "--endpoints");
  if (oo.segments < 2) throw UsageError("--segments must be >= 2");
  const Polyline start = Polyline::chord({e[0], e[1]}, {e[2], e[3]}, oo.segments);
  const MinimizeResult r =
      minimize(start, pw.weight,
               {oo.iters, oo.grad_tol, false, oo.full_gradient ? Descent::Full : Descent::ChordNormal});

  if (o.format == "csv") {
    emit(polyline_csv(r.polyline), o.out_path, out);
  } else if (o.format == "json") {
    Json spec = weight_json(pw);
    spec["endpoints"] = {{e[0], e[1]}, {e[2], e[3]}};
    spec["segments"] = oo.segments;
    spec["iters"] = oo.iters;
    spec["grad_tol"] = oo.grad_tol;
    spec["descent"] = oo.full_gradient ? "full" : "chord_normal";
    Json vertices = Json::array();
    for (const CartesianPoint& c : r.polyline.vertices()) {
      const double z = std::hypot(c.x, c.y);
      vertices.push_back({{"x", c.x}, {"y", c.y}, {"z", z}, {"phi", std::atan2(c.x, c.y)}});
    }
    Json diag = {{"initial_value", r.initial_value}, {"value", r.value},
                 {"iterations", r.iterations},       {"max_gradient", r.max_gradient},
                 {"converged", r.converged}};
    emit(dump({{"spec", spec}, {"vertices", vertices}, {"diagnostics", diag}}), o.out_path, out);
  } else {
    emit(curve_svg({r.polyline.vertices()}, 0.0), o.out_path, out);
  }
  return kOk;
}

// -- bvp -------------------------------------------------------------------

struct BvpOptions {
  std::string endpoints;
  std::string n_bracket;
  bool same_branch = false;
  double solve_tol = 1e-10;
};

int run_bvp(const CommonOptions& o, const BvpOptions& bo, std::ostream& out) {
  const ParsedWeight pw = resolve_weight(o.weight);
  if (bo.endpoints.empty()) throw UsageError("--endpoints phi1,z1,phi2,z2 is required");
  const std::vector<double> e = parse_list(bo.endpoints, 4, "--endpoints");
  const BvpProblem prob{{e[0], e[1]}, {e[2], e[3]}, pw.weight, bo.same_branch};
  Bracket bracket;
  if (bo.n_bracket.empty()) {
    const double n_min = min_admissible_n(prob);
    bracket = {n_min * (1.0 + 1e-9), 1e3 * n_min};
  } else {
    const auto [lo, hi] = parse_range(bo.n_bracket, "--n-bracket");
    bracket = {lo, hi};
  }
  const BvpSolution sol = solve_bvp(prob, bracket, bo.solve_tol);
  const ExtremalSpec es = sol.spec(pw.weight);
  const double z_max = o.z_max > 0.0 ? o.z_max : std::max(prob.a.z, prob.b.z);
  const TraceResult trace = trace_extremal(es, z_max, o.samples, o.tol);

  Json spec = weight_json(pw);
  spec["endpoints"] = {{{"phi", e[0]}, {"z", e[1]}}, {{"phi", e[2]}, {"z", e[3]}}};
  spec["same_branch"] = bo.same_branch;
  spec["n_bracket"] = {bracket.lo, bracket.hi};
  spec["solution"] = {{"n", sol.n},
                      {"phi0", sol.phi0},
                      {"orientation", sol.orientation},
                      {"z_turn", sol.z_turn},
                      {"span", sol.span}};
  spec["z_max"] = z_max;
  spec["samples_per_branch"] = o.samples;
  TraceDiagnostics diag{trace.z_turn, max_of(trace.clairaut_deviation),
                        trace_el_residual(trace, pw.weight, sol.phi0)};
  emit(render_trace(o.format, spec, trace, diag, true), o.out_path, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Extremal curves of the integral of v(z) ds, v a function of the distance z from the pole.\n"
      "Angles use phi measured from the +y axis toward +x (tan phi = x/y);\n"
      "the conventional polar angle is theta_std = pi/2 - phi.",
      "radex"};
  app.require_subcommand(1);

  CommonOptions o;
  OracleOptions oo;
  BvpOptions bo;

  auto* trace = app.add_subcommand("trace", "trace an extremal by quadrature or closed form");
  add_weight_flags(trace, o.weight);
  trace->add_option("--n", o.n, "first-integral constant n");
  trace->add_option("--zmax", o.z_max, "largest radius to trace");
  trace->add_option("--samples", o.samples, "samples per branch")->check(CLI::Range(3, 10000000));
  trace->add_option("--psi-range", o.psi_range,
                    "a:b; sample the power-law closed form over psi (phi for lambda = -1)");
  trace->add_option("--tol", o.tol, "quadrature tolerance")->check(CLI::Range(1e-14, 1e-3));
  trace->add_option("--phi0", o.phi0, "angle of the turning point");
  trace->add_option("--z0", o.z0, "reference radius for lambda = -1 spirals");
  trace->add_flag("--uniform-phi", o.uniform_phi, "equal angular steps instead of a cosine z-grid");
  add_output_flags(trace, o, {"csv", "json", "svg"});

  auto* check = app.add_subcommand("check", "run the invariant suite on one extremal");
  add_weight_flags(check, o.weight);
  check->add_option("--n", o.n, "first-integral constant n");
  check->add_option("--zmax", o.z_max, "largest radius to trace");
  check->add_option("--samples", o.samples, "samples per branch")->check(CLI::Range(3, 10000000));
  check->add_option("--tol", o.tol, "quadrature tolerance")->check(CLI::Range(1e-14, 1e-3));
  check->add_option("--phi0", o.phi0, "angle of the turning point");
  check->add_option("--z0", o.z0, "reference radius for lambda = -1 spirals");
  add_output_flags(check, o, {"csv", "json"});

  auto* oracle = app.add_subcommand("oracle", "minimize the discretized functional directly");
  add_weight_flags(oracle, o.weight);
  oracle->add_option("--endpoints", oo.endpoints, "x1,y1,x2,y2 (Cartesian)");
  oracle->add_option("--segments", oo.segments, "polyline segments");
  oracle->add_option("--iters", oo.iters, "iteration budget");
  oracle->add_option("--grad-tol", oo.grad_tol, "stop when max |descent component| <= this");
  oracle->add_flag("--full-gradient", oo.full_gradient,
                   "descend along the full gradient instead of moving vertices perpendicular to the chord");
  add_output_flags(oracle, o, {"csv", "json", "svg"});

  auto* bvp = app.add_subcommand("bvp", "find the extremal through two polar endpoints");
  add_weight_flags(bvp, o.weight);
  bvp->add_option("--endpoints", bo.endpoints, "phi1,z1,phi2,z2 (polar, phi from +y)");
  bvp->add_option("--n-bracket", bo.n_bracket, "lo:hi bracket for n");
  bvp->add_flag("--same-branch", bo.same_branch, "endpoints on one side of the turning point");
  bvp->add_option("--solve-tol", bo.solve_tol, "tolerance on the angular span");
  bvp->add_option("--zmax", o.z_max, "radius to trace the solution to");
  bvp->add_option("--samples", o.samples, "samples per branch")->check(CLI::Range(3, 10000000));
  bvp->add_option("--tol", o.tol, "quadrature tolerance")->check(CLI::Range(1e-14, 1e-3));
  add_output_flags(bvp, o, {"csv", "json", "svg"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (trace->parsed()) return run_trace(o, out);
    if (check->parsed()) return run_check(o, out);
    if (oracle->parsed()) return run_oracle(o, oo, out);
    return run_bvp(o, bo, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    err << "usage error: " << e.name() << ": " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace radex::cli
