#pragma once

#include <string>

#include "roadmap/model.hpp"

namespace rmg {

struct RenderStyle {
  double scale = 40.0;   // pixels per meter
  double margin = 1.0;   // meters of padding around the boundary box
  bool draw_clearance = true;
  bool draw_nodes = true;
  bool draw_edges = true;
  bool draw_stations = true;
  bool smooth_overlay = false;
  double cut_distance = 0.2;  // blend size for the overlay
};

// Deterministic SVG: gray obstacles, light-gray clearance bands along
// boundary and obstacle outlines, blue dashed edges, blue node crosses, red
// interaction-point markers, optional smoothed overlay. Byte-identical for
// identical inputs.
std::string render_svg(const Environment& env, const Roadmap& rm, const RenderStyle& style = {});

}  // namespace rmg
