#pragma once

#include <cstdint>
#include <vector>

#include "roadmap/model.hpp"

namespace rmg {

struct PenaltyPolicy {
  double base = 1.1;        // multiplier per prior traversal of an edge
  uint32_t k_max = 5;       // cap on alternatives per pair
  double demand_scale = 1.0;

  // Paths requested for a pair with the given transport demand.
  uint32_t select_k(uint64_t demand) const;
};

struct PairPaths {
  uint32_t from = 0;
  uint32_t to = 0;
  std::vector<std::vector<uint32_t>> paths;  // node id sequences
};

struct PathSet {
  std::vector<PairPaths> pairs;     // row-major demand order
  std::vector<uint64_t> edge_usage; // per edge of the roadmap searched
  std::vector<uint8_t> node_used;   // nodes appearing on any path
};

// K shortest loopless paths from s to t under usage penalties: traversing an
// edge already used u times costs length * base^u, where u counts traversals
// by previously accepted paths of this search. Candidate costs are evaluated
// against the usage state current at selection time; cost ties break toward
// the lexicographically smaller node sequence. Returns fewer than k paths if
// the graph is exhausted; throws if s == t, an endpoint is out of range, or
// no path exists at all.
std::vector<std::vector<uint32_t>> yen_k_shortest(const Roadmap& rm, uint32_t s, uint32_t t,
                                                  uint32_t k, const PenaltyPolicy& policy);

// Runs the penalized search for every positive directed demand entry.
// Pair searches are independent (each starts from zero usage) and run in
// parallel; the merged result is deterministic.
PathSet compute_demand_paths(const Roadmap& rm, const TransportMatrix& demand,
                             const PenaltyPolicy& policy, bool parallel = true);

// Recomputes ps.edge_usage (traversal counts over all paths) and
// ps.node_used from ps.pairs. Paths referring to absent edges throw.
void accumulate_usage(const Roadmap& rm, PathSet& ps);

// Keeps nodes on some path (stations always) and edges with positive usage;
// surviving edges carry their usage count. Node order is preserved, so
// stations keep the leading indices.
Roadmap prune_unused(const Roadmap& rm, const PathSet& ps);

// Deletes crossing edges until the embedding is planar. Crossings are grouped
// into connected conflict components; each component keeps the edge with the
// largest importance u(e) - sum of u over edges crossing e (ties: larger
// usage, then smaller edge id) and drops the edges crossing it. Repeats until
// no crossings remain. Nodes are untouched.
Roadmap planarize(const Roadmap& rm);

// Cleanup pass: iteratively removes non-station nodes of degree <= 1, then
// straightens chains of degree-2 non-station nodes into a single segment
// where that segment is traversable, keeps d_ve_min to other nodes, and
// crosses nothing; straightened spans get evenly spaced nodes back at the
// largest count that keeps spacing >= d_v_min.
Roadmap refine(const Roadmap& rm, const Environment& env);

// Full reduction: paths, prune, planarize (with a reachability check for
// every demand pair afterwards), refine.
Roadmap optimize_roadmap(const Roadmap& full, const TransportMatrix& demand,
                         const Environment& env, const PenaltyPolicy& policy,
                         bool parallel = true);

}  // namespace rmg
