#include "roadmap/edges.hpp"

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "roadmap/geom.hpp"
#include "roadmap/graph.hpp"
#include "roadmap/spatial.hpp"

namespace rmg {

namespace {

// True if segment (i, j) is traversable: inside free space and at least
// d_ve_min away from every other node. `nearby` lists candidate violators
// (must cover all nodes within d_ve_min of the segment).
bool edge_ok(const NodeSet& ns, uint32_t i, uint32_t j, const FreeSpace& fs, double d_ve_min,
             const std::vector<uint32_t>& nearby) {
  Segment seg{ns.nodes[i].pos, ns.nodes[j].pos};
  if (!segment_in_free_space(seg, fs)) return false;
  for (uint32_t k : nearby) {
    if (k == i || k == j) continue;
    if (segment_point_distance(seg, ns.nodes[k].pos) < d_ve_min - kGeoTol) return false;
  }
  return true;
}

Roadmap assemble(const NodeSet& ns, const std::vector<std::pair<uint32_t, uint32_t>>& pairs,
                 const std::vector<uint8_t>& keep) {
  Roadmap rm;
  rm.nodes = ns.nodes;
  for (size_t p = 0; p < pairs.size(); ++p)
    if (keep[p]) rm.add_edge(pairs[p].first, pairs[p].second);
  std::sort(rm.edges.begin(), rm.edges.end(),
            [](const RoadmapEdge& x, const RoadmapEdge& y) {
              return x.a != y.a ? x.a < y.a : x.b < y.b;
            });
  return rm;
}

}  // namespace

Roadmap build_full_edges(const NodeSet& ns, const Environment& env, const EdgeBuildConfig& cfg) {
  FreeSpace fs = env.free_space();
  double d_ve_min = env.constraints.d_ve_min;
  size_t n = ns.nodes.size();

  PointIndex index(std::max(d_ve_min, 1.0));
  for (const RoadmapNode& nd : ns.nodes) index.insert(nd.pos);

  bool bounded = cfg.candidate_radius > 0.0;
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  if (bounded) {
    for (uint32_t i = 0; i < n; ++i) {
      // within() returns sorted ids, so pair order is (i, j) with j > i.
      for (uint32_t j : index.within(ns.nodes[i].pos, cfg.candidate_radius))
        if (j > i) pairs.emplace_back(i, j);
    }
  } else {
    pairs.reserve(n * (n - 1) / 2);
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  std::vector<uint8_t> keep(pairs.size(), 0);
#pragma omp parallel for schedule(dynamic, 32)
  for (int64_t p = 0; p < static_cast<int64_t>(pairs.size()); ++p) {
    auto [i, j] = pairs[p];
    Segment seg{ns.nodes[i].pos, ns.nodes[j].pos};
    Point mid = seg.lerp(0.5);
    auto nearby = index.within(mid, seg.length() / 2.0 + d_ve_min);
    keep[p] = edge_ok(ns, i, j, fs, d_ve_min, nearby) ? 1 : 0;
  }
  return assemble(ns, pairs, keep);
}

std::vector<Segment> demand_corridors(const NodeSet& ns, const Environment& env,
                                      const TransportMatrix& demand) {
  NodeSet seeds;
  seeds.nodes.assign(ns.nodes.begin(), ns.nodes.begin() + ns.seed_count());
  seeds.station_count = ns.station_count;
  seeds.corner_count = ns.corner_count;
  Roadmap direct = build_full_edges(seeds, env);
  AdjGraph g = AdjGraph::from_roadmap(direct);

  std::vector<std::pair<uint32_t, uint32_t>> segs;
  uint32_t cached_src = kNoNode;
  ShortestPathTree tree;
  for (auto [i, j] : demand.unordered_pairs()) {
    if (i != cached_src) {
      tree = dijkstra(g, i);
      cached_src = i;
    }
    auto path = extract_path(tree, i, j);
    if (!path) continue;  // reachability is enforced later, on the full roadmap
    for (size_t t = 1; t < path->size(); ++t) {
      uint32_t a = (*path)[t - 1], b = (*path)[t];
      segs.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(segs.begin(), segs.end());
  segs.erase(std::unique(segs.begin(), segs.end()), segs.end());

  std::vector<Segment> out;
  out.reserve(segs.size());
  for (auto [a, b] : segs) out.push_back({seeds.nodes[a].pos, seeds.nodes[b].pos});
  return out;
}

Roadmap build_full_edges_serial(const NodeSet& ns, const Environment& env,
                                const EdgeBuildConfig& cfg) {
  FreeSpace fs = env.free_space();
  double d_ve_min = env.constraints.d_ve_min;
  size_t n = ns.nodes.size();

  std::vector<uint32_t> all(n);
  for (uint32_t k = 0; k < n; ++k) all[k] = k;

  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  std::vector<uint8_t> keep;
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = i + 1; j < n; ++j) {
      if (cfg.candidate_radius > 0.0 &&
          distance(ns.nodes[i].pos, ns.nodes[j].pos) > cfg.candidate_radius)
        continue;
      pairs.emplace_back(i, j);
      keep.push_back(edge_ok(ns, i, j, fs, d_ve_min, all) ? 1 : 0);
    }
  }
  return assemble(ns, pairs, keep);
}

}  // namespace rmg
