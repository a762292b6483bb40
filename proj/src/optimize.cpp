#include "roadmap/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "roadmap/geom.hpp"
#include "roadmap/graph.hpp"

namespace rmg {

namespace {

uint64_t pack(uint32_t a, uint32_t b) { return (static_cast<uint64_t>(a) << 32) | b; }

struct SearchGraph {
  struct Arc {
    uint32_t to;
    uint32_t edge;
  };
  std::vector<std::vector<Arc>> adj;
  std::vector<double> length;                      // per edge
  std::unordered_map<uint64_t, uint32_t> edge_id;  // (min, max) -> edge

  explicit SearchGraph(const Roadmap& rm) : adj(rm.nodes.size()) {
    length.reserve(rm.edges.size());
    for (uint32_t e = 0; e < rm.edges.size(); ++e) {
      const RoadmapEdge& ed = rm.edges[e];
      adj[ed.a].push_back({ed.b, e});
      adj[ed.b].push_back({ed.a, e});
      length.push_back(ed.length);
      edge_id.emplace(pack(ed.a, ed.b), e);
    }
  }

  uint32_t edge_between(uint32_t a, uint32_t b) const {
    auto it = edge_id.find(pack(std::min(a, b), std::max(a, b)));
    return it == edge_id.end() ? std::numeric_limits<uint32_t>::max() : it->second;
  }
};

// Shortest path under per-edge costs, skipping banned nodes and banned
// directed arcs. Ties on cost resolve toward the smaller node id, so the
// result is unique for a fixed input.
std::optional<std::vector<uint32_t>> penalized_shortest(
    const SearchGraph& g, uint32_t s, uint32_t t, const std::vector<double>& edge_cost,
    const std::vector<uint8_t>& banned_node, const std::unordered_set<uint64_t>& banned_arc) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.adj.size(), inf);
  std::vector<uint32_t> parent(g.adj.size(), kNoNode);
  std::vector<uint8_t> closed(g.adj.size(), 0);
  using Entry = std::pair<double, uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
  dist[s] = 0.0;
  pq.push({0.0, s});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (closed[u]) continue;
    closed[u] = 1;
    if (u == t) break;
    for (const auto& arc : g.adj[u]) {
      if (banned_node[arc.to] || closed[arc.to]) continue;
      if (!banned_arc.empty() && banned_arc.count(pack(u, arc.to))) continue;
      double nd = d + edge_cost[arc.edge];
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        parent[arc.to] = u;
        pq.push({nd, arc.to});
      }
    }
  }
  if (!closed[t]) return std::nullopt;
  std::vector<uint32_t> path;
  for (uint32_t v = t; v != kNoNode; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

double path_cost(const SearchGraph& g, const std::vector<uint32_t>& path,
                 const std::vector<double>& edge_cost) {
  double c = 0.0;
  for (size_t i = 0; i + 1 < path.size(); ++i)
    c += edge_cost[g.edge_between(path[i], path[i + 1])];
  return c;
}

}  // namespace

uint32_t PenaltyPolicy::select_k(uint64_t demand) const {
  double raw = std::round(static_cast<double>(demand) * demand_scale);
  if (raw < 1.0) return 1;
  if (raw > static_cast<double>(k_max)) return k_max;
  return static_cast<uint32_t>(raw);
}

std::vector<std::vector<uint32_t>> yen_k_shortest(const Roadmap& rm, uint32_t s, uint32_t t,
                                                  uint32_t k, const PenaltyPolicy& policy) {
  if (s >= rm.nodes.size() || t >= rm.nodes.size())
    throw ValidationError("path endpoint out of range");
  if (s == t) throw ValidationError("path endpoints coincide");
  if (k == 0) throw ValidationError("path count must be positive");

  SearchGraph g(rm);
  std::vector<uint64_t> usage(rm.edges.size(), 0);
  std::vector<double> edge_cost = g.length;
  std::vector<uint8_t> no_ban(rm.nodes.size(), 0);
  std::unordered_set<uint64_t> no_arc_ban;

  auto bump_usage = [&](const std::vector<uint32_t>& path) {
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      uint32_t e = g.edge_between(path[i], path[i + 1]);
      ++usage[e];
      edge_cost[e] = g.length[e] * std::pow(policy.base, static_cast<double>(usage[e]));
    }
  };

  std::vector<std::vector<uint32_t>> accepted;
  auto first = penalized_shortest(g, s, t, edge_cost, no_ban, no_arc_ban);
  if (!first)
    throw InfeasibleError("no path between node " + std::to_string(s) + " and node " +
                          std::to_string(t));
  accepted.push_back(*first);

  // Candidates persist across rounds; costs are re-evaluated at selection
  // time against the usage accumulated by the accepted paths so far.
  std::set<std::vector<uint32_t>> candidates;
  while (accepted.size() < k) {
    bump_usage(accepted.back());
    const std::vector<uint32_t>& prev = accepted.back();
    for (size_t i = 0; i + 1 < prev.size(); ++i) {
      std::vector<uint8_t> banned_node(rm.nodes.size(), 0);
      std::unordered_set<uint64_t> banned_arc;
      for (size_t r = 0; r < i; ++r) banned_node[prev[r]] = 1;
      for (const auto& p : accepted) {
        if (p.size() <= i + 1) continue;
        if (!std::equal(prev.begin(), prev.begin() + i + 1, p.begin())) continue;
        banned_arc.insert(pack(p[i], p[i + 1]));
      }
      auto spur = penalized_shortest(g, prev[i], t, edge_cost, banned_node, banned_arc);
      if (!spur) continue;
      std::vector<uint32_t> cand(prev.begin(), prev.begin() + i);
      cand.insert(cand.end(), spur->begin(), spur->end());
      if (std::find(accepted.begin(), accepted.end(), cand) == accepted.end())
        candidates.insert(std::move(cand));
    }
    if (candidates.empty()) break;
    auto best = candidates.begin();
    double best_cost = path_cost(g, *best, edge_cost);
    for (auto it = std::next(candidates.begin()); it != candidates.end(); ++it) {
      double c = path_cost(g, *it, edge_cost);
      if (c < best_cost - kGeoTol) {
        best = it;
        best_cost = c;
      }
    }
    accepted.push_back(*best);
    candidates.erase(best);
  }
  return accepted;
}

void accumulate_usage(const Roadmap& rm, PathSet& ps) {
  SearchGraph g(rm);
  ps.edge_usage.assign(rm.edges.size(), 0);
  ps.node_used.assign(rm.nodes.size(), 0);
  for (const PairPaths& pp : ps.pairs) {
    for (const auto& path : pp.paths) {
      for (size_t i = 0; i + 1 < path.size(); ++i) {
        uint32_t e = g.edge_between(path[i], path[i + 1]);
        if (e == std::numeric_limits<uint32_t>::max())
          throw ValidationError("path uses an edge absent from the roadmap");
        ++ps.edge_usage[e];
      }
      for (uint32_t v : path) ps.node_used[v] = 1;
    }
  }
}

PathSet compute_demand_paths(const Roadmap& rm, const TransportMatrix& demand,
                             const PenaltyPolicy& policy, bool parallel) {
  size_t n = demand.size();
  if (n > rm.nodes.size())
    throw ValidationError("transport matrix larger than the roadmap node count");
  for (size_t i = 0; i < n; ++i)
    if (rm.nodes[i].kind != NodeKind::Station)
      throw ValidationError("leading roadmap nodes must be station nodes");

  auto pairs = demand.directed_pairs();
  PathSet ps;
  ps.pairs.resize(pairs.size());
  std::vector<std::string> infeasible(pairs.size());

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int64_t p = 0; p < static_cast<int64_t>(pairs.size()); ++p) {
    auto [i, j] = pairs[p];
    PairPaths pp;
    pp.from = i;
    pp.to = j;
    try {
      uint32_t k = policy.select_k(demand.at(i, j));
      pp.paths = yen_k_shortest(rm, i, j, k, policy);
    } catch (const InfeasibleError&) {
      infeasible[p] = "no roadmap path for demand pair (" + std::to_string(i + 1) + ", " +
                      std::to_string(j + 1) + ")";
    }
    ps.pairs[p] = std::move(pp);
  }
  for (const std::string& msg : infeasible)
    if (!msg.empty()) throw InfeasibleError(msg);

  accumulate_usage(rm, ps);
  return ps;
}

Roadmap prune_unused(const Roadmap& rm, const PathSet& ps) {
  if (ps.edge_usage.size() != rm.edges.size() || ps.node_used.size() != rm.nodes.size())
    throw ValidationError("path set does not match the roadmap");

  std::vector<uint32_t> remap(rm.nodes.size(), kNoNode);
  Roadmap out;
  for (uint32_t v = 0; v < rm.nodes.size(); ++v) {
    if (!ps.node_used[v] && rm.nodes[v].kind != NodeKind::Station) continue;
    remap[v] = out.add_node(rm.nodes[v].pos, rm.nodes[v].kind);
  }
  for (uint32_t e = 0; e < rm.edges.size(); ++e) {
    if (ps.edge_usage[e] == 0) continue;
    out.add_edge(remap[rm.edges[e].a], remap[rm.edges[e].b], ps.edge_usage[e]);
  }
  return out;
}

Roadmap planarize(const Roadmap& rm) {
  std::vector<uint8_t> alive(rm.edges.size(), 1);
  auto crossing = [&](uint32_t e, uint32_t f) {
    const RoadmapEdge& x = rm.edges[e];
    const RoadmapEdge& y = rm.edges[f];
    if (x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b) return false;
    return segments_cross({rm.nodes[x.a].pos, rm.nodes[x.b].pos},
                          {rm.nodes[y.a].pos, rm.nodes[y.b].pos});
  };

  for (;;) {
    std::vector<std::vector<uint32_t>> conflicts(rm.edges.size());
    bool any = false;
    for (uint32_t e = 0; e < rm.edges.size(); ++e) {
      if (!alive[e]) continue;
      for (uint32_t f = e + 1; f < rm.edges.size(); ++f) {
        if (!alive[f] || !crossing(e, f)) continue;
        conflicts[e].push_back(f);
        conflicts[f].push_back(e);
        any = true;
      }
    }
    if (!any) break;

    // Connected components of the crossing relation, walked in edge order.
    std::vector<uint8_t> seen(rm.edges.size(), 0);
    std::vector<uint32_t> doomed;
    for (uint32_t e = 0; e < rm.edges.size(); ++e) {
      if (seen[e] || conflicts[e].empty()) continue;
      std::vector<uint32_t> comp;
      std::vector<uint32_t> stack{e};
      seen[e] = 1;
      while (!stack.empty()) {
        uint32_t c = stack.back();
        stack.pop_back();
        comp.push_back(c);
        for (uint32_t nb : conflicts[c]) {
          if (!seen[nb]) {
            seen[nb] = 1;
            stack.push_back(nb);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      uint32_t best = comp[0];
      auto importance = [&](uint32_t c) {
        int64_t imp = static_cast<int64_t>(rm.edges[c].usage);
        for (uint32_t nb : conflicts[c]) imp -= static_cast<int64_t>(rm.edges[nb].usage);
        return imp;
      };
      int64_t best_imp = importance(best);
      for (size_t idx = 1; idx < comp.size(); ++idx) {
        uint32_t c = comp[idx];
        int64_t imp = importance(c);
        if (imp > best_imp || (imp == best_imp && rm.edges[c].usage > rm.edges[best].usage)) {
          best = c;
          best_imp = imp;
        }
      }
      for (uint32_t nb : conflicts[best]) doomed.push_back(nb);
    }
    for (uint32_t d : doomed) alive[d] = 0;
  }

  Roadmap out;
  out.nodes = rm.nodes;
  for (uint32_t e = 0; e < rm.edges.size(); ++e) {
    if (!alive[e]) continue;
    out.add_edge(rm.edges[e].a, rm.edges[e].b, rm.edges[e].usage);
  }
  return out;
}

Roadmap refine(const Roadmap& rm, const Environment& env) {
  FreeSpace fs = env.free_space();
  const double d_v_min = env.constraints.d_v_min;
  const double d_ve_min = env.constraints.d_ve_min;

  struct WNode {
    Point pos;
    NodeKind kind;
    bool alive = true;
  };
  struct WEdge {
    uint32_t a, b;
    uint64_t usage;
    bool alive = true;
  };
  std::vector<WNode> nodes;
  std::vector<WEdge> edges;
  for (const RoadmapNode& n : rm.nodes) nodes.push_back({n.pos, n.kind});
  for (const RoadmapEdge& e : rm.edges) edges.push_back({e.a, e.b, e.usage});

  std::vector<uint32_t> degree(nodes.size(), 0);
  std::vector<std::vector<uint32_t>> incident(nodes.size());
  for (uint32_t e = 0; e < edges.size(); ++e) {
    ++degree[edges[e].a];
    ++degree[edges[e].b];
    incident[edges[e].a].push_back(e);
    incident[edges[e].b].push_back(e);
  }
  auto alive_incident = [&](uint32_t v) {
    std::vector<uint32_t> out;
    for (uint32_t e : incident[v])
      if (edges[e].alive) out.push_back(e);
    return out;
  };

  // Dead ends: drop non-station nodes down to degree <= 1, repeatedly.
  for (bool changed = true; changed;) {
    changed = false;
    for (uint32_t v = 0; v < nodes.size(); ++v) {
      if (!nodes[v].alive || nodes[v].kind == NodeKind::Station || degree[v] > 1) continue;
      nodes[v].alive = false;
      for (uint32_t e : alive_incident(v)) {
        edges[e].alive = false;
        --degree[edges[e].a];
        --degree[edges[e].b];
      }
      changed = true;
    }
  }

  // Chain straightening over the original nodes; reinserted nodes are not
  // candidates themselves.
  const uint32_t original = static_cast<uint32_t>(nodes.size());
  std::vector<uint8_t> claimed(original, 0);
  auto is_interior = [&](uint32_t v) {
    return v < original && nodes[v].alive && nodes[v].kind != NodeKind::Station &&
           degree[v] == 2 && !claimed[v];
  };

  for (uint32_t v0 = 0; v0 < original; ++v0) {
    if (!is_interior(v0)) continue;

    // Walk outward in both directions until a non-interior endpoint.
    std::vector<uint32_t> chain{v0};
    std::vector<uint32_t> chain_edges;
    uint32_t ends[2];
    bool cycle = false;
    for (int dir = 0; dir < 2 && !cycle; ++dir) {
      uint32_t prev = v0;
      uint32_t e = alive_incident(v0)[dir];
      for (;;) {
        uint32_t next = edges[e].a == prev ? edges[e].b : edges[e].a;
        chain_edges.push_back(e);
        if (next == v0) {
          cycle = true;
          break;
        }
        if (!is_interior(next)) {
          ends[dir] = next;
          break;
        }
        if (dir == 0)
          chain.insert(chain.begin(), next);
        else
          chain.push_back(next);
        auto inc = alive_incident(next);
        e = inc[0] == e ? inc[1] : inc[0];
        prev = next;
      }
    }
    for (uint32_t c : chain) claimed[c] = 1;
    if (cycle || ends[0] == ends[1]) continue;

    uint32_t a = ends[0], b = ends[1];
    Segment seg{nodes[a].pos, nodes[b].pos};
    bool parallel_exists = false;
    for (const WEdge& e : edges) {
      if (!e.alive) continue;
      if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) parallel_exists = true;
    }
    if (parallel_exists || !segment_in_free_space(seg, fs)) continue;

    std::vector<uint8_t> in_chain(nodes.size(), 0);
    for (uint32_t c : chain) in_chain[c] = 1;
    std::vector<uint8_t> is_chain_edge(edges.size(), 0);
    for (uint32_t e : chain_edges) is_chain_edge[e] = 1;

    bool ok = true;
    for (uint32_t w = 0; w < nodes.size() && ok; ++w) {
      if (!nodes[w].alive || in_chain[w] || w == a || w == b) continue;
      if (segment_point_distance(seg, nodes[w].pos) < d_ve_min - kGeoTol) ok = false;
    }
    for (uint32_t e = 0; e < edges.size() && ok; ++e) {
      if (!edges[e].alive || is_chain_edge[e]) continue;
      if (segments_cross(seg, {nodes[edges[e].a].pos, nodes[edges[e].b].pos})) ok = false;
    }
    if (!ok) continue;

    uint64_t usage = 0;
    for (uint32_t e : chain_edges) usage = std::max(usage, edges[e].usage);
    for (uint32_t c : chain) {
      nodes[c].alive = false;
      degree[c] = 0;
    }
    for (uint32_t e : chain_edges) {
      edges[e].alive = false;
      if (nodes[edges[e].a].alive) --degree[edges[e].a];
      if (nodes[edges[e].b].alive) --degree[edges[e].b];
    }

    // Even reinsertion at the largest count that keeps d_v_min spacing.
    double len = seg.length();
    uint32_t n_div = static_cast<uint32_t>(std::floor(len / d_v_min + kGeoTol));
    std::vector<uint32_t> kept{a};
    if (n_div >= 2) {
      for (uint32_t j = 1; j < n_div; ++j) {
        Point p = seg.lerp(static_cast<double>(j) / n_div);
        bool fits = true;
        for (uint32_t w = 0; w < nodes.size() && fits; ++w) {
          if (!nodes[w].alive) continue;
          if (distance(p, nodes[w].pos) < d_v_min - kGeoTol) fits = false;
        }
        for (uint32_t e = 0; e < edges.size() && fits; ++e) {
          if (!edges[e].alive) continue;
          if (segment_point_distance({nodes[edges[e].a].pos, nodes[edges[e].b].pos}, p) <
              d_ve_min - kGeoTol)
            fits = false;
        }
        if (!fits) continue;
        uint32_t id = static_cast<uint32_t>(nodes.size());
        nodes.push_back({p, NodeKind::Reinserted});
        degree.push_back(0);
        incident.emplace_back();
        kept.push_back(id);
      }
    }
    kept.push_back(b);
    for (size_t i = 0; i + 1 < kept.size(); ++i) {
      uint32_t e = static_cast<uint32_t>(edges.size());
      edges.push_back({kept[i], kept[i + 1], usage});
      incident[kept[i]].push_back(e);
      incident[kept[i + 1]].push_back(e);
      ++degree[kept[i]];
      ++degree[kept[i + 1]];
    }
  }

  std::vector<uint32_t> remap(nodes.size(), kNoNode);
  Roadmap out;
  for (uint32_t v = 0; v < nodes.size(); ++v)
    if (nodes[v].alive) remap[v] = out.add_node(nodes[v].pos, nodes[v].kind);
  std::vector<std::pair<std::pair<uint32_t, uint32_t>, uint64_t>> flat;
  for (const WEdge& e : edges) {
    if (!e.alive) continue;
    uint32_t a = remap[e.a], b = remap[e.b];
    flat.push_back({{std::min(a, b), std::max(a, b)}, e.usage});
  }
  std::sort(flat.begin(), flat.end());
  for (const auto& [ab, usage] : flat) out.add_edge(ab.first, ab.second, usage);
  return out;
}

Roadmap optimize_roadmap(const Roadmap& full, const TransportMatrix& demand,
                         const Environment& env, const PenaltyPolicy& policy, bool parallel) {
  PathSet ps = compute_demand_paths(full, demand, policy, parallel);
  Roadmap reduced = prune_unused(full, ps);
  Roadmap planar = planarize(reduced);

  // Planarization may only delete redundant edges; every demand pair must
  // still be connected or the result is unusable.
  std::vector<uint32_t> comp(planar.nodes.size());
  for (uint32_t v = 0; v < comp.size(); ++v) comp[v] = v;
  std::function<uint32_t(uint32_t)> find = [&](uint32_t v) {
    while (comp[v] != v) v = comp[v] = comp[comp[v]];
    return v;
  };
  for (const RoadmapEdge& e : planar.edges) comp[find(e.a)] = find(e.b);
  for (auto [i, j] : demand.directed_pairs()) {
    if (find(i) != find(j))
      throw InfeasibleError("demand pair (" + std::to_string(i + 1) + ", " +
                            std::to_string(j + 1) + ") disconnected by planarization");
  }
  return refine(planar, env);
}

}  // namespace rmg
