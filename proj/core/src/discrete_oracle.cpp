#include "radex/discrete_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "radex/errors.hpp"

namespace radex {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 50;

// Per-segment contribution v(|m|) |b - a|.
double segment_value(CartesianPoint a, CartesianPoint b, const RadialWeight& w) {
  const double mz = std::hypot(0.5 * (a.x + b.x), 0.5 * (a.y + b.y));
  return w.v(mz) * std::hypot(b.x - a.x, b.y - a.y);
}

void segment_values(const std::vector<CartesianPoint>& v, const RadialWeight& w,
                    std::vector<double>& out) {
  out.resize(v.size() - 1);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) out[i] = segment_value(v[i], v[i + 1], w);
}

// Extended-precision accumulation, rounded once. Rounding is monotone, so a
// genuine decrease of the segment sum never shows up as an increase.
double sum(const std::vector<double>& xs) {
  long double s = 0.0L;
  for (double x : xs) s += x;
  return static_cast<double>(s);
}

}  // namespace

Polyline::Polyline(std::vector<CartesianPoint> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw Error(ErrorKind::Domain, "polyline needs >= 2 vertices");
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (vertices_[i].x == vertices_[i - 1].x && vertices_[i].y == vertices_[i - 1].y) {
      throw Error(ErrorKind::Domain, "repeated vertex at index " + std::to_string(i));
    }
  }
}

Polyline Polyline::chord(CartesianPoint a, CartesianPoint b, std::size_t segments) {
  if (segments < 1) throw Error(ErrorKind::Domain, "chord needs >= 1 segment");
  std::vector<CartesianPoint> v(segments + 1);
  for (std::size_t i = 0; i <= segments; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(segments);
    v[i] = {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
  }
  v.back() = b;
  return Polyline(std::move(v));
}

void Polyline::displace_interior(std::size_t i, Vec2 d) {
  CartesianPoint& p = vertices_.at(i + 1);
  p.x += d.x;
  p.y += d.y;
}

double functional_value(const Polyline& pl, const RadialWeight& w) {
  std::vector<double> seg;
  segment_values(pl.vertices(), w, seg);
  return sum(seg);
}

std::vector<Vec2> gradient(const Polyline& pl, const RadialWeight& w) {
  const auto& v = pl.vertices();
  const std::size_t segs = v.size() - 1;
  // d(segment)/d(start vertex) and d(segment)/d(end vertex).
  std::vector<Vec2> d_start(segs), d_end(segs);
  for (std::size_t i = 0; i < segs; ++i) {
    const CartesianPoint a = v[i], b = v[i + 1];
    const double mx = 0.5 * (a.x + b.x), my = 0.5 * (a.y + b.y);
    const double mz = std::hypot(mx, my);
    const double ex = b.x - a.x, ey = b.y - a.y;
    const double len = std::hypot(ex, ey);
    const Dual vq = w.v_and_q(mz);
    // d v(|m|) / d vertex = q m / |m| * 1/2 for either end.
    const double wx = 0.5 * vq.deriv * mx / mz * len;
    const double wy = 0.5 * vq.deriv * my / mz * len;
    const double lx = vq.value * ex / len, ly = vq.value * ey / len;
    d_start[i] = {wx - lx, wy - ly};
    d_end[i] = {wx + lx, wy + ly};
  }
  std::vector<Vec2> g(v.size() - 2);
  for (std::size_t k = 0; k < g.size(); ++k) {
    g[k] = {d_end[k].x + d_start[k + 1].x, d_end[k].y + d_start[k + 1].y};
  }
  return g;
}

MinimizeResult minimize(const Polyline& pl, const RadialWeight& w, const MinimizeOptions& opts) {
  std::vector<CartesianPoint> x = pl.vertices();
  std::vector<CartesianPoint> trial = x;
  std::vector<double> seg, trial_seg;
  segment_values(x, w, seg);
  double value = sum(seg);

  MinimizeResult out{pl, value, value, 0.0, 0, false, {}};
  if (x.size() < 3) {
    out.converged = true;
    return out;
  }

  const double cx = x.back().x - x.front().x, cy = x.back().y - x.front().y;
  const double chord = std::hypot(cx, cy);
  if (opts.descent == Descent::ChordNormal && chord == 0.0) {
    throw Error(ErrorKind::Domain, "chord-normal descent needs distinct endpoints");
  }
  const double nx = -cy / chord, ny = cx / chord;

  double step = 1.0;
  std::size_t iter = 0;
  for (;; ++iter) {
    std::vector<Vec2> g = gradient(Polyline(x), w);
    if (opts.descent == Descent::ChordNormal) {
      for (Vec2& gk : g) {
        const double gn = gk.x * nx + gk.y * ny;
        gk = {gn * nx, gn * ny};
      }
    }
    double gmax = 0.0, gnorm2 = 0.0;
    for (const Vec2& gi : g) {
      gmax = std::max({gmax, std::abs(gi.x), std::abs(gi.y)});
      gnorm2 += gi.x * gi.x + gi.y * gi.y;
    }
    out.max_gradient = gmax;
    if (gmax <= opts.grad_tol) {
      out.converged = true;
      break;
    }
    if (iter >= opts.max_iters) break;

    step = std::min(2.0 * step, 1e6);
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxBacktracks; ++attempt, step *= 0.5) {
      for (std::size_t k = 0; k < g.size(); ++k) {
        trial[k + 1] = {x[k + 1].x - step * g[k].x, x[k + 1].y - step * g[k].y};
      }
      try {
        segment_values(trial, w, trial_seg);
      } catch (const Error& e) {
        throw Error(ErrorKind::DomainViolation,
                    "descent step left the weight domain at iteration " + std::to_string(iter) +
                        ": " + e.what());
      }
      // Segment-wise difference keeps the decrease test above round-off.
      double delta = 0.0;
      for (std::size_t i = 0; i < seg.size(); ++i) delta += trial_seg[i] - seg[i];
      const double trial_value = sum(trial_seg);
      if (delta <= -kArmijo * step * gnorm2 && trial_value <= value) {
        x.swap(trial);
        seg.swap(trial_seg);
        value = trial_value;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw Error(ErrorKind::StalledDescent,
                  "line search rejected " + std::to_string(kMaxBacktracks) +
                      " consecutive trial steps at iteration " + std::to_string(iter) +
                      " (max gradient " + num(gmax) + ")");
    }
    trial = x;
    if (opts.record_history) out.history.push_back(value);
  }
  out.polyline = Polyline(std::move(x));
  out.value = value;
  out.iterations = iter;
  return out;
}

}  // namespace radex
