#pragma once

#include <cstdint>
#include <vector>

#include "roadmap/model.hpp"

namespace rmg {

struct CubicBezier {
  Point p0, p1, p2, p3;
  Point eval(double t) const;
};

// Corner cut at one roadmap node between two incident segments. The curve
// starts and ends on the segments, both inner control points sit on the node,
// so it never strays farther than the cut distance from the corner.
struct Blend {
  uint32_t node = 0;
  uint32_t from = 0;  // neighbor the curve comes from
  uint32_t to = 0;    // neighbor it heads to
  CubicBezier curve;
};

struct SmoothedPath {
  std::vector<uint32_t> source;     // the polyline's node ids
  std::vector<Blend> blends;        // one per interior corner
  std::vector<Point> samples;       // arc-length samples, ~5 cm apart
  double max_deviation = 0.0;       // samples vs the source polyline
};

// Smooths a roadmap path by cutting every interior corner at distance
// min(d_ad, half of either adjacent segment). d_ad must be positive and at
// most the robot's safety margin, which keeps the curve in free space
// whenever the polyline is traversable. Collinear corners get degenerate
// (straight) blends.
SmoothedPath smooth_path(const std::vector<uint32_t>& path, const Roadmap& rm, double d_ad,
                         const Robot& robot);

// Blends for every pair of edges meeting at each roadmap node, for rendering.
// A node of degree d contributes d*(d-1)/2 blends.
std::vector<Blend> smooth_roadmap(const Roadmap& rm, double d_ad, const Robot& robot);

}  // namespace rmg
