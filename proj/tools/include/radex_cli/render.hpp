#pragma once

#include <optional>
#include <string>
#include <vector>

#include "radex/discrete_oracle.hpp"
#include "radex/reduced_ode.hpp"

#include <json.hpp>

namespace radex::cli {

inline constexpr const char* kAngleNote =
    "# phi is measured from the +y axis toward +x (tan phi = x/y); theta_std = pi/2 - phi";

// %.17g, round-trip exact for doubles.
std::string format_double(double v);

struct TraceDiagnostics {
  double z_turn = 0.0;
  double max_clairaut_dev = 0.0;
  std::optional<double> max_el_residual;
};

std::string trace_csv(const TraceResult& trace);
nlohmann::ordered_json trace_json(const nlohmann::ordered_json& spec, const TraceResult& trace,
                                  const TraceDiagnostics& diag);

std::string polyline_csv(const Polyline& pl);

// Static SVG: one path per branch, a marked pole, and the turning circle
// when z_turn > 0. The viewBox is the bounding box of the paths (and the
// pole) with a 5% margin; y points up.
std::string curve_svg(const std::vector<std::vector<CartesianPoint>>& branches, double z_turn);

}  // namespace radex::cli
