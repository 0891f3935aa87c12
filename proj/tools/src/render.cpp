#include "radex_cli/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace radex::cli {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

std::string trace_csv(const TraceResult& trace) {
  std::ostringstream os;
  os << kAngleNote << '\n' << "phi,z,x,y,clairaut_dev\n";
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const PolarPoint p = trace.samples[i];
    const CartesianPoint c = to_cartesian(p);
    os << format_double(p.phi) << ',' << format_double(p.z) << ',' << format_double(c.x) << ','
       << format_double(c.y) << ',' << format_double(trace.clairaut_deviation[i]) << '\n';
  }
  return os.str();
}

nlohmann::ordered_json trace_json(const nlohmann::ordered_json& spec, const TraceResult& trace,
                                  const TraceDiagnostics& diag) {
  nlohmann::ordered_json samples = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const PolarPoint p = trace.samples[i];
    const CartesianPoint c = to_cartesian(p);
    samples.push_back({{"phi", p.phi},
                       {"z", p.z},
                       {"x", c.x},
                       {"y", c.y},
                       {"clairaut_dev", trace.clairaut_deviation[i]}});
  }
  nlohmann::ordered_json d = {{"z_turn", diag.z_turn}, {"max_clairaut_dev", diag.max_clairaut_dev}};
  if (diag.max_el_residual) {
    d["max_el_residual"] = *diag.max_el_residual;
  } else {
    d["max_el_residual"] = nullptr;
  }
  return {{"spec", spec}, {"samples", std::move(samples)}, {"diagnostics", std::move(d)}};
}

std::string polyline_csv(const Polyline& pl) {
  std::ostringstream os;
  os << kAngleNote << '\n' << "x,y,z,phi\n";
  for (const CartesianPoint& c : pl.vertices()) {
    const double z = std::hypot(c.x, c.y);
    const double phi = z > 0.0 ? std::atan2(c.x, c.y) : 0.0;
    os << format_double(c.x) << ',' << format_double(c.y) << ',' << format_double(z) << ','
       << format_double(phi) << '\n';
  }
  return os.str();
}

std::string curve_svg(const std::vector<std::vector<CartesianPoint>>& branches, double z_turn) {
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  for (const auto& branch : branches) {
    for (const CartesianPoint& c : branch) {
      min_x = std::min(min_x, c.x);
      max_x = std::max(max_x, c.x);
      min_y = std::min(min_y, c.y);
      max_y = std::max(max_y, c.y);
    }
  }
  double width = max_x - min_x;
  double height = max_y - min_y;
  const double extent = std::max({width, height, std::numeric_limits<double>::min()});
  width = std::max(width, 1e-3 * extent);
  height = std::max(height, 1e-3 * extent);
  const double mx = 0.05 * width, my = 0.05 * height;
  // SVG y grows downward; plot -y.
  const double vb_x = min_x - mx, vb_y = -(max_y + my);
  const double vb_w = width + 2.0 * mx, vb_h = height + 2.0 * my;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << short_double(vb_x) << ' '
     << short_double(vb_y) << ' ' << short_double(vb_w) << ' ' << short_double(vb_h)
     << "\" width=\"800\" height=\"" << short_double(800.0 * vb_h / vb_w) << "\">\n";
  if (z_turn > 0.0) {
    os << "  <circle class=\"turning-circle\" cx=\"0\" cy=\"0\" r=\"" << short_double(z_turn)
       << "\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"4 3\" stroke-width=\"1\" "
          "vector-effect=\"non-scaling-stroke\"/>\n";
  }
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const auto& branch = branches[b];
    if (branch.empty()) continue;
    os << "  <path class=\"branch\" id=\"branch-" << b << "\" d=\"";
    for (std::size_t i = 0; i < branch.size(); ++i) {
      os << (i == 0 ? "M" : " L") << short_double(branch[i].x) << ' ' << short_double(-branch[i].y);
    }
    os << "\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" "
          "vector-effect=\"non-scaling-stroke\"/>\n";
  }
  os << "  <circle class=\"pole\" cx=\"0\" cy=\"0\" r=\"" << short_double(0.01 * extent)
     << "\" fill=\"#c0392b\"/>\n"
     << "</svg>\n";
  return os.str();
}

}  // namespace radex::cli
