#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rmg {

// Tolerance for orientation/incidence tests. Scenes are meter-scale, so
// 1e-9 m is far above double noise and far below any feature size.
inline constexpr double kGeoTol = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(b - a); }

inline bool near(Point a, Point b, double tol = kGeoTol) {
  return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

// Sign of the turn a->b->c: >0 left, <0 right, 0 collinear (within kGeoTol).
double orientation(Point a, Point b, Point c);

struct Segment {
  Point a;
  Point b;

  double length() const { return distance(a, b); }
  Point lerp(double t) const { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }
};

double segment_point_distance(const Segment& s, Point p);
double segment_segment_distance(const Segment& s, const Segment& t);

// Proper interior crossing. Sharing an endpoint is not a crossing; collinear
// overlap of positive length is.
bool segments_cross(const Segment& s, const Segment& t);

struct Polygon {
  std::vector<Point> vertices;

  size_t size() const { return vertices.size(); }
  Segment edge(size_t i) const {
    return {vertices[i], vertices[(i + 1) % vertices.size()]};
  }

  double signed_area() const;
  bool is_ccw() const { return signed_area() > 0.0; }
  void normalize_ccw();
  bool is_simple() const;

  // Boundary-inclusive point containment (even-odd rule).
  bool contains(Point p) const;

  double boundary_distance(Point p) const;
  double boundary_distance(const Segment& s) const;

  std::pair<Point, Point> bounding_box() const;
};

// Free space represented implicitly: a point is free iff its clearance
// against the boundary complement and all holes is at least clearance_radius.
// No offset polygons are ever constructed.
struct FreeSpace {
  Polygon boundary;
  std::vector<Polygon> holes;
  double clearance_radius = 0.0;  // r_rob + d_s
};

// Signed clearance: minimum distance to the boundary polyline and all hole
// polylines, negated if p lies outside the boundary or inside a hole.
double clearance(Point p, const FreeSpace& fs);

bool in_free_space(Point p, const FreeSpace& fs);

// Exact test (segment-to-polygon distances, no sampling) that every point of
// s keeps clearance_radius from the boundary complement and all holes.
bool segment_in_free_space(const Segment& s, const FreeSpace& fs);

// Node candidates at the free-space side of convex obstacle corners and
// reflex boundary corners, offset along the corner bisector so they clear
// both incident faces by the expansion radius (plus 1 mm). Candidates that
// still fail in_free_space (because of some other nearby object) are
// dropped. Enumeration order is holes first, then the boundary, vertices in
// stored order; this order defines candidate ids used for tie-breaking
// downstream.
std::vector<Point> convex_corner_candidates(const FreeSpace& fs);

struct VisEdge {
  uint32_t a;
  uint32_t b;
  double length;

  bool operator==(const VisEdge& o) const { return a == o.a && b == o.b && length == o.length; }
};

// All pairs (a < b) whose straight connection stays in free space.
// The parallel kernel and the serial reference compute identical results.
std::vector<VisEdge> visibility_edges(std::span<const Point> nodes, const FreeSpace& fs);
std::vector<VisEdge> visibility_edges_serial(std::span<const Point> nodes, const FreeSpace& fs);

}  // namespace rmg
