#include "roadmap/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "roadmap/geom.hpp"

namespace rmg {

namespace {

constexpr double kSampleStep = 0.05;

void check_cut(double d_ad, const Robot& robot) {
  if (!(d_ad > 0.0) || !std::isfinite(d_ad))
    throw ValidationError("cut distance must be positive");
  if (d_ad > robot.d_s + kGeoTol)
    throw ValidationError("cut distance exceeds the safety margin");
}

CubicBezier corner_blend(Point prev, Point corner, Point next, double d_ad) {
  Point u = prev - corner;
  Point w = next - corner;
  double lu = norm(u), lw = norm(w);
  double t = std::min({d_ad, lu / 2.0, lw / 2.0});
  Point a = corner + (t / lu) * u;
  Point b = corner + (t / lw) * w;
  return {a, corner, corner, b};
}

// Resample a dense polyline at fixed arc steps, keeping the endpoints.
std::vector<Point> resample(const std::vector<Point>& dense, double step) {
  std::vector<Point> out;
  if (dense.empty()) return out;
  out.push_back(dense.front());
  double carried = 0.0;
  for (size_t i = 0; i + 1 < dense.size(); ++i) {
    Point a = dense[i], b = dense[i + 1];
    double len = distance(a, b);
    if (len <= kGeoTol) continue;
    double pos = step - carried;
    while (pos < len - kGeoTol) {
      out.push_back(a + (pos / len) * (b - a));
      pos += step;
    }
    carried = len - (pos - step);
  }
  out.push_back(dense.back());
  return out;
}

double polyline_distance(const std::vector<Point>& poly, Point p) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < poly.size(); ++i)
    best = std::min(best, segment_point_distance({poly[i], poly[i + 1]}, p));
  return best;
}

}  // namespace

Point CubicBezier::eval(double t) const {
  double s = 1.0 - t;
  return (s * s * s) * p0 + (3.0 * s * s * t) * p1 + (3.0 * s * t * t) * p2 + (t * t * t) * p3;
}

SmoothedPath smooth_path(const std::vector<uint32_t>& path, const Roadmap& rm, double d_ad,
                         const Robot& robot) {
  check_cut(d_ad, robot);
  if (path.size() < 2) throw ValidationError("path needs at least two nodes");
  for (uint32_t v : path)
    if (v >= rm.nodes.size()) throw ValidationError("path node out of range");
  for (size_t i = 0; i + 1 < path.size(); ++i)
    if (!rm.has_edge(path[i], path[i + 1]))
      throw ValidationError("path traverses a missing edge");

  SmoothedPath sp;
  sp.source = path;

  std::vector<Point> poly;
  for (uint32_t v : path) poly.push_back(rm.nodes[v].pos);

  for (size_t i = 1; i + 1 < path.size(); ++i) {
    Blend b;
    b.node = path[i];
    b.from = path[i - 1];
    b.to = path[i + 1];
    b.curve = corner_blend(poly[i - 1], poly[i], poly[i + 1], d_ad);
    sp.blends.push_back(b);
  }

  // Dense trace: straight pieces between blend endpoints, curves subdivided.
  std::vector<Point> dense;
  dense.push_back(poly.front());
  for (const Blend& b : sp.blends) {
    dense.push_back(b.curve.p0);
    for (int k = 1; k < 64; ++k) dense.push_back(b.curve.eval(k / 64.0));
    dense.push_back(b.curve.p3);
  }
  dense.push_back(poly.back());
  sp.samples = resample(dense, kSampleStep);

  for (const Point& s : sp.samples)
    sp.max_deviation = std::max(sp.max_deviation, polyline_distance(poly, s));
  return sp;
}

std::vector<Blend> smooth_roadmap(const Roadmap& rm, double d_ad, const Robot& robot) {
  check_cut(d_ad, robot);
  auto adj = rm.adjacency();
  std::vector<Blend> out;
  for (uint32_t v = 0; v < rm.nodes.size(); ++v) {
    const auto& inc = adj[v];
    for (size_t i = 0; i < inc.size(); ++i) {
      for (size_t j = i + 1; j < inc.size(); ++j) {
        const RoadmapEdge& ei = rm.edges[inc[i]];
        const RoadmapEdge& ej = rm.edges[inc[j]];
        uint32_t from = ei.a == v ? ei.b : ei.a;
        uint32_t to = ej.a == v ? ej.b : ej.a;
        Blend b;
        b.node = v;
        b.from = from;
        b.to = to;
        b.curve = corner_blend(rm.nodes[from].pos, rm.nodes[v].pos, rm.nodes[to].pos, d_ad);
        out.push_back(b);
      }
    }
  }
  return out;
}

}  // namespace rmg
