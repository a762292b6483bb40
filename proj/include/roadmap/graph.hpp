#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "roadmap/model.hpp"

namespace rmg {

inline constexpr uint32_t kNoNode = std::numeric_limits<uint32_t>::max();

// Lightweight adjacency view used by the search routines. Arcs keep the
// originating roadmap edge index so usage counters can be attributed.
struct AdjGraph {
  struct Arc {
    uint32_t to;
    double weight;
    uint32_t edge;
  };
  std::vector<std::vector<Arc>> adj;

  explicit AdjGraph(size_t n) : adj(n) {}
  size_t size() const { return adj.size(); }

  void add_undirected(uint32_t a, uint32_t b, double w, uint32_t edge_id) {
    adj[a].push_back({b, w, edge_id});
    adj[b].push_back({a, w, edge_id});
  }

  static AdjGraph from_roadmap(const Roadmap& rm);
};

struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<uint32_t> parent;

  bool reached(uint32_t v) const { return dist[v] < std::numeric_limits<double>::infinity(); }
};

// Deterministic Dijkstra: the priority queue orders by (distance, node id)
// and relaxations only overwrite on strict improvement.
ShortestPathTree dijkstra(const AdjGraph& g, uint32_t src);

std::optional<std::vector<uint32_t>> extract_path(const ShortestPathTree& tree, uint32_t src,
                                                  uint32_t dst);

double path_length(const AdjGraph& g, const std::vector<uint32_t>& path);

}  // namespace rmg
