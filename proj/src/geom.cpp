#include "roadmap/geom.hpp"

#include <algorithm>
#include <limits>

namespace rmg {

double orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  if (std::abs(v) <= kGeoTol) return 0.0;
  return v;
}

double segment_point_distance(const Segment& s, Point p) {
  const Point d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 <= kGeoTol * kGeoTol) return distance(s.a, p);
  double t = dot(p - s.a, d) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(s.lerp(t), p);
}

namespace {

// Strict segment intersection including touching configurations; used for
// distance (where touching means distance zero) as opposed to the crossing
// predicate below.
bool segments_touch(const Segment& s, const Segment& t) {
  const double o1 = orientation(s.a, s.b, t.a);
  const double o2 = orientation(s.a, s.b, t.b);
  const double o3 = orientation(t.a, t.b, s.a);
  const double o4 = orientation(t.a, t.b, s.b);
  if (o1 * o2 < 0.0 && o3 * o4 < 0.0) return true;
  auto on = [](const Segment& seg, Point p) {
    return orientation(seg.a, seg.b, p) == 0.0 &&
           std::min(seg.a.x, seg.b.x) - kGeoTol <= p.x && p.x <= std::max(seg.a.x, seg.b.x) + kGeoTol &&
           std::min(seg.a.y, seg.b.y) - kGeoTol <= p.y && p.y <= std::max(seg.a.y, seg.b.y) + kGeoTol;
  };
  return on(s, t.a) || on(s, t.b) || on(t, s.a) || on(t, s.b);
}

}  // namespace

double segment_segment_distance(const Segment& s, const Segment& t) {
  if (segments_touch(s, t)) return 0.0;
  double d = segment_point_distance(s, t.a);
  d = std::min(d, segment_point_distance(s, t.b));
  d = std::min(d, segment_point_distance(t, s.a));
  d = std::min(d, segment_point_distance(t, s.b));
  return d;
}

bool segments_cross(const Segment& s, const Segment& t) {
  const double o1 = orientation(s.a, s.b, t.a);
  const double o2 = orientation(s.a, s.b, t.b);
  const double o3 = orientation(t.a, t.b, s.a);
  const double o4 = orientation(t.a, t.b, s.b);
  if (o1 * o2 < 0.0 && o3 * o4 < 0.0) return true;

  // Collinear overlap of positive length counts as a crossing; mere endpoint
  // contact does not.
  if (o1 == 0.0 && o2 == 0.0 && o3 == 0.0 && o4 == 0.0) {
    const Point d = s.b - s.a;
    const double len2 = dot(d, d);
    if (len2 <= kGeoTol * kGeoTol) return false;
    double ta = dot(t.a - s.a, d) / len2;
    double tb = dot(t.b - s.a, d) / len2;
    if (ta > tb) std::swap(ta, tb);
    const double lo = std::max(0.0, ta);
    const double hi = std::min(1.0, tb);
    return (hi - lo) * std::sqrt(len2) > kGeoTol;
  }
  return false;
}

double Polygon::signed_area() const {
  double a = 0.0;
  for (size_t i = 0; i < vertices.size(); ++i) {
    const Point& p = vertices[i];
    const Point& q = vertices[(i + 1) % vertices.size()];
    a += cross(p, q);
  }
  return 0.5 * a;
}

void Polygon::normalize_ccw() {
  if (!is_ccw()) std::reverse(vertices.begin(), vertices.end());
}

bool Polygon::is_simple() const {
  const size_t n = vertices.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    const Segment ei = edge(i);
    if (ei.length() <= kGeoTol) return false;
    for (size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const Segment ej = edge(j);
      if (adjacent) {
        // Adjacent edges may only share the common vertex.
        if (segments_cross(ei, ej)) return false;
      } else if (segments_touch(ei, ej)) {
        return false;
      }
    }
  }
  return true;
}

bool Polygon::contains(Point p) const {
  if (boundary_distance(p) <= kGeoTol) return true;
  bool inside = false;
  const size_t n = vertices.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = vertices[i];
    const Point& b = vertices[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double t = (p.y - a.y) / (b.y - a.y);
      if (p.x < a.x + t * (b.x - a.x)) inside = !inside;
    }
  }
  return inside;
}

double Polygon::boundary_distance(Point p) const {
  double d = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < vertices.size(); ++i) {
    d = std::min(d, segment_point_distance(edge(i), p));
  }
  return d;
}

double Polygon::boundary_distance(const Segment& s) const {
  double d = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < vertices.size(); ++i) {
    d = std::min(d, segment_segment_distance(edge(i), s));
  }
  return d;
}

std::pair<Point, Point> Polygon::bounding_box() const {
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-lo.x, -lo.y};
  for (const Point& v : vertices) {
    lo.x = std::min(lo.x, v.x);
    lo.y = std::min(lo.y, v.y);
    hi.x = std::max(hi.x, v.x);
    hi.y = std::max(hi.y, v.y);
  }
  return {lo, hi};
}

double clearance(Point p, const FreeSpace& fs) {
  double c = fs.boundary.boundary_distance(p);
  if (!fs.boundary.contains(p)) c = -c;
  for (const Polygon& h : fs.holes) {
    double d = h.boundary_distance(p);
    if (h.contains(p)) d = -d;
    c = std::min(c, d);
  }
  return c;
}

bool in_free_space(Point p, const FreeSpace& fs) {
  return clearance(p, fs) >= fs.clearance_radius - kGeoTol;
}

bool segment_in_free_space(const Segment& s, const FreeSpace& fs) {
  const double r = fs.clearance_radius - kGeoTol;
  // Endpoint clearance carries the inside/outside sign; the segment-to-edge
  // distances below are unsigned, so a segment can only leave the free side
  // by approaching some polygon edge within r first.
  if (clearance(s.a, fs) < r || clearance(s.b, fs) < r) return false;
  if (fs.boundary.boundary_distance(s) < r) return false;
  for (const Polygon& h : fs.holes) {
    if (h.boundary_distance(s) < r) return false;
  }
  return true;
}

namespace {

// Candidates clear both incident faces by the expansion radius plus this
// epsilon. Anything less leaves them unreachable along their own faces.
constexpr double kCornerEps = 1e-3;

void corner_candidates_for(const Polygon& poly, bool hole, double offset,
                           const FreeSpace& fs, std::vector<Point>& out) {
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Point prev = poly.vertices[(i + n - 1) % n];
    const Point v = poly.vertices[i];
    const Point next = poly.vertices[(i + 1) % n];
    const double turn = orientation(prev, v, next);
    // CCW polygons: holes expose their convex vertices (left turns) to the
    // free space; the boundary exposes its reflex vertices (right turns).
    if (hole ? turn <= 0.0 : turn >= 0.0) continue;
    Point u = prev - v;
    Point w = next - v;
    const double nu = norm(u);
    const double nw = norm(w);
    if (nu <= kGeoTol || nw <= kGeoTol) continue;
    u = (1.0 / nu) * u;
    w = (1.0 / nw) * w;
    Point bisector = {-(u.x + w.x), -(u.y + w.y)};
    const double nb = norm(bisector);
    if (nb <= kGeoTol) continue;  // needle vertex, no exterior direction
    // A point at distance d along the bisector clears the incident face
    // lines by d * sin(phi / 2), phi being the solid angle at the vertex.
    const double half_sin = std::sqrt(std::max(0.0, 0.5 * (1.0 - (u.x * w.x + u.y * w.y))));
    if (half_sin <= kGeoTol) continue;  // spike vertex, offset diverges
    const Point c = v + (offset / (half_sin * nb)) * bisector;
    if (in_free_space(c, fs)) out.push_back(c);
  }
}

}  // namespace

std::vector<Point> convex_corner_candidates(const FreeSpace& fs) {
  std::vector<Point> out;
  const double offset = fs.clearance_radius + kCornerEps;
  for (const Polygon& h : fs.holes) corner_candidates_for(h, true, offset, fs, out);
  corner_candidates_for(fs.boundary, false, offset, fs, out);
  return out;
}

std::vector<VisEdge> visibility_edges(std::span<const Point> nodes, const FreeSpace& fs) {
  const size_t n = nodes.size();
  if (n < 2) return {};
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (uint32_t i = 0; i + 1 < n; ++i) {
    for (uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<uint8_t> visible(pairs.size(), 0);
#pragma omp parallel for schedule(dynamic, 64)
  for (long k = 0; k < static_cast<long>(pairs.size()); ++k) {
    const auto [i, j] = pairs[k];
    visible[k] = segment_in_free_space({nodes[i], nodes[j]}, fs) ? 1 : 0;
  }
  std::vector<VisEdge> edges;
  for (size_t k = 0; k < pairs.size(); ++k) {
    if (!visible[k]) continue;
    const auto [i, j] = pairs[k];
    edges.push_back({i, j, distance(nodes[i], nodes[j])});
  }
  return edges;
}

std::vector<VisEdge> visibility_edges_serial(std::span<const Point> nodes, const FreeSpace& fs) {
  std::vector<VisEdge> edges;
  for (uint32_t i = 0; i + 1 < nodes.size(); ++i) {
    for (uint32_t j = i + 1; j < nodes.size(); ++j) {
      if (segment_in_free_space({nodes[i], nodes[j]}, fs)) {
        edges.push_back({i, j, distance(nodes[i], nodes[j])});
      }
    }
  }
  return edges;
}

}  // namespace rmg
