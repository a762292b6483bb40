#pragma once

#include "roadmap/discretize.hpp"
#include "roadmap/model.hpp"

namespace rmg {

struct EdgeBuildConfig {
  // Pairs farther apart than this are not considered. Non-positive means
  // unbounded (every pair is tested).
  double candidate_radius = 0.0;
};

// Connects every node pair within the candidate radius whose straight segment
// stays in free space and keeps d_ve_min to all non-endpoint nodes. Edges come
// out sorted by (a, b) with zero usage. OpenMP-parallel over pairs.
Roadmap build_full_edges(const NodeSet& ns, const Environment& env,
                         const EdgeBuildConfig& cfg = {});

// Brute-force reference: same contract, no spatial index, no threads.
Roadmap build_full_edges_serial(const NodeSet& ns, const Environment& env,
                                const EdgeBuildConfig& cfg = {});

// Segments of the shortest demand-pair routes over the station and corner
// nodes alone, deduplicated. These are the direct connections the seed nodes
// can realize before grid filling; unreachable pairs contribute nothing.
std::vector<Segment> demand_corridors(const NodeSet& ns, const Environment& env,
                                      const TransportMatrix& demand);

}  // namespace rmg
