#pragma once

#include <cstdint>
#include <vector>

#include "roadmap/model.hpp"

namespace rmg {

// Placement result. Station nodes occupy [0, station_count), corner nodes
// [station_count, station_count + corner_count), grid nodes the rest.
struct NodeSet {
  std::vector<RoadmapNode> nodes;
  size_t station_count = 0;
  size_t corner_count = 0;

  size_t seed_count() const { return station_count + corner_count; }
};

struct GridConfig {
  double resolution = 0.0;  // d_g
  uint32_t max_size = 1;

  // Smallest resolution whose grid diagonals keep the node-edge clearance
  // (d_g >= sqrt(2) * d_ve_min, and never below d_v_min), rounded up to the
  // centimeter; max size spans the environment from any seed.
  static GridConfig defaults(const Environment& env);

  void validate(const Constraints& c) const;
};

double ceil_to_centimeter(double meters);

// One node per interaction point, station order, placed unconditionally.
NodeSet place_station_nodes(const Environment& env);

// Adds convex-corner candidates in descending visibility-centrality order,
// skipping candidates that violate d_v_min against already placed nodes.
// Centrality of a candidate is the number of demand-pair shortest paths in
// the visibility graph (interaction points plus all candidates) that pass
// through it; ties break toward smaller candidate id.
void place_corner_nodes(NodeSet& ns, const Environment& env, const TransportMatrix& demand);

// Ring of the local grid at Chebyshev radius `size` around `center`, in
// lexicographic (i, j) order. Ring s has 8*s points; inner rings belong to
// smaller sizes.
std::vector<Point> local_grid_points(Point center, uint32_t size, double resolution);

// Grows local grids around every seed (stations first, then corners), one
// ring size at a time, adding candidates that are in free space and keep
// d_v_min to everything placed so far. Candidates closer than d_ve_min to a
// keep_clear segment are skipped, so those connections stay traversable once
// edges are built. Deterministic.
void discretize_free_space(NodeSet& ns, const Environment& env, const GridConfig& cfg,
                           const std::vector<Segment>& keep_clear = {});

}  // namespace rmg
