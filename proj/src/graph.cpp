#include "roadmap/graph.hpp"

#include <algorithm>
#include <queue>

namespace rmg {

AdjGraph AdjGraph::from_roadmap(const Roadmap& rm) {
  AdjGraph g(rm.nodes.size());
  for (uint32_t e = 0; e < rm.edges.size(); ++e) {
    g.add_undirected(rm.edges[e].a, rm.edges[e].b, rm.edges[e].length, e);
  }
  return g;
}

ShortestPathTree dijkstra(const AdjGraph& g, uint32_t src) {
  const double inf = std::numeric_limits<double>::infinity();
  ShortestPathTree tree{std::vector<double>(g.size(), inf), std::vector<uint32_t>(g.size(), kNoNode)};
  using Entry = std::pair<double, uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::vector<bool> closed(g.size(), false);
  tree.dist[src] = 0.0;
  open.emplace(0.0, src);
  while (!open.empty()) {
    const auto [d, u] = open.top();
    open.pop();
    if (closed[u]) continue;
    closed[u] = true;
    for (const AdjGraph::Arc& arc : g.adj[u]) {
      const double nd = d + arc.weight;
      if (nd < tree.dist[arc.to]) {
        tree.dist[arc.to] = nd;
        tree.parent[arc.to] = u;
        open.emplace(nd, arc.to);
      }
    }
  }
  return tree;
}

std::optional<std::vector<uint32_t>> extract_path(const ShortestPathTree& tree, uint32_t src,
                                                  uint32_t dst) {
  if (!tree.reached(dst)) return std::nullopt;
  std::vector<uint32_t> path;
  for (uint32_t v = dst; v != kNoNode; v = tree.parent[v]) {
    path.push_back(v);
    if (v == src) break;
  }
  if (path.back() != src) return std::nullopt;
  std::reverse(path.begin(), path.end());
  return path;
}

double path_length(const AdjGraph& g, const std::vector<uint32_t>& path) {
  double len = 0.0;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    for (const AdjGraph::Arc& arc : g.adj[path[i]]) {
      if (arc.to == path[i + 1]) {
        len += arc.weight;
        break;
      }
    }
  }
  return len;
}

}  // namespace rmg
