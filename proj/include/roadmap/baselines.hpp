#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "roadmap/discretize.hpp"
#include "roadmap/model.hpp"
#include "roadmap/optimize.hpp"

namespace rmg {

enum class BaselineMethod { Grid4, Grid8, Random };

BaselineMethod baseline_method_from_string(const std::string& s);
std::string to_string(BaselineMethod m);

struct BaselineConfig {
  BaselineMethod method = BaselineMethod::Grid4;
  uint64_t seed = 0;  // random method only
};

// Node spacing the method aims for: grid4 uses d_v_min (4-neighbor steps stay
// legal), grid8 uses sqrt(2) * d_ve_min rounded up to the centimeter (so
// diagonal neighbors keep node-edge clearance), random enforces d_v_min as a
// minimum separation.
double baseline_spacing(BaselineMethod m, const Constraints& c);

// Interaction points first, then method-specific free-space filling: grids
// drop a global lattice (anchored one clearance radius in from the bounding
// box corner), random throws darts until 10000 consecutive rejections.
// Every candidate must clear d_v_min against already accepted nodes.
NodeSet generate_baseline_nodes(const Environment& env, const BaselineConfig& cfg);

// Delaunay triangulation edges (Bowyer-Watson, insertion in index order),
// deterministic. Two points yield their single edge; collinear input yields
// none.
std::vector<std::pair<uint32_t, uint32_t>> delaunay_triangulation(std::span<const Point> pts);

// Triangulates the node set and keeps edges whose segment is traversable.
// Baseline edges skip the node-edge clearance filter; lattice geometry
// already spaces them.
Roadmap delaunay_edges(const NodeSet& ns, const Environment& env);

// Nodes, Delaunay edges, then the same penalized path reduction the main
// pipeline uses, without planarization or refinement.
Roadmap generate_baseline(const Environment& env, const TransportMatrix& demand,
                          const BaselineConfig& cfg, const PenaltyPolicy& policy,
                          bool parallel = true);

}  // namespace rmg
