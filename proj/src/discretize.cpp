#include "roadmap/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "roadmap/geom.hpp"
#include "roadmap/graph.hpp"
#include "roadmap/spatial.hpp"

namespace rmg {

double ceil_to_centimeter(double meters) {
  return std::ceil(meters * 100.0 - kGeoTol) / 100.0;
}

GridConfig GridConfig::defaults(const Environment& env) {
  const Constraints& c = env.constraints;
  GridConfig cfg;
  cfg.resolution = ceil_to_centimeter(std::max(std::sqrt(2.0) * c.d_ve_min, c.d_v_min));
  auto [lo, hi] = env.boundary.bounding_box();
  double span = std::max(hi.x - lo.x, hi.y - lo.y);
  cfg.max_size = static_cast<uint32_t>(std::ceil(span / cfg.resolution - kGeoTol));
  if (cfg.max_size == 0) cfg.max_size = 1;
  return cfg;
}

void GridConfig::validate(const Constraints& c) const {
  if (!(resolution > 0.0) || !std::isfinite(resolution))
    throw ValidationError("grid resolution must be positive");
  if (resolution < std::sqrt(2.0) * c.d_ve_min - kGeoTol)
    throw ValidationError("grid resolution below sqrt(2) * minimum node-edge distance");
  if (resolution < c.d_v_min - kGeoTol)
    throw ValidationError("grid resolution below minimum node distance");
  if (max_size == 0) throw ValidationError("grid max size must be at least 1");
}

NodeSet place_station_nodes(const Environment& env) {
  NodeSet ns;
  std::vector<Point> ips = env.interaction_points();
  double d_v_min = env.constraints.d_v_min;
  for (size_t i = 0; i < ips.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (distance(ips[i], ips[j]) < d_v_min - kGeoTol)
        throw ValidationError("interaction points " + std::to_string(j + 1) + " and " +
                              std::to_string(i + 1) + " are closer than the minimum node distance");
    }
    ns.nodes.push_back({ips[i], NodeKind::Station});
  }
  ns.station_count = ns.nodes.size();
  return ns;
}

void place_corner_nodes(NodeSet& ns, const Environment& env, const TransportMatrix& demand) {
  FreeSpace fs = env.free_space();
  std::vector<Point> cand = convex_corner_candidates(fs);
  if (cand.empty()) return;

  std::vector<Point> ips = env.interaction_points();
  size_t n_ip = ips.size();
  if (demand.size() != n_ip)
    throw ValidationError("transport matrix order does not match interaction point count");

  std::vector<Point> vis_nodes = ips;
  vis_nodes.insert(vis_nodes.end(), cand.begin(), cand.end());
  std::vector<VisEdge> vis = visibility_edges(vis_nodes, fs);

  AdjGraph g(vis_nodes.size());
  for (const VisEdge& e : vis) g.add_undirected(e.a, e.b, e.length, 0);

  // Shortest-path trees are reused across pairs sharing a source.
  std::vector<uint64_t> centrality(cand.size(), 0);
  auto pairs = demand.unordered_pairs();
  uint32_t cached_src = kNoNode;
  ShortestPathTree tree;
  for (auto [i, j] : pairs) {
    if (i != cached_src) {
      tree = dijkstra(g, i);
      cached_src = i;
    }
    auto path = extract_path(tree, i, j);
    if (!path) continue;  // reachability is enforced later, on the full roadmap
    for (size_t t = 1; t + 1 < path->size(); ++t) {
      uint32_t v = (*path)[t];
      if (v >= n_ip) ++centrality[v - n_ip];
    }
  }

  std::vector<uint32_t> order(cand.size());
  for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    return centrality[a] > centrality[b];
  });

  double d_v_min = env.constraints.d_v_min;
  PointIndex index(d_v_min);
  for (const RoadmapNode& n : ns.nodes) index.insert(n.pos);
  for (uint32_t ci : order) {
    if (index.any_within(cand[ci], d_v_min - kGeoTol)) continue;
    index.insert(cand[ci]);
    ns.nodes.push_back({cand[ci], NodeKind::Corner});
  }
  ns.corner_count = ns.nodes.size() - ns.station_count;
}

std::vector<Point> local_grid_points(Point center, uint32_t size, double resolution) {
  std::vector<Point> out;
  if (size == 0) return out;
  int s = static_cast<int>(size);
  for (int i = -s; i <= s; ++i) {
    for (int j = -s; j <= s; ++j) {
      if (std::max(std::abs(i), std::abs(j)) != s) continue;
      out.push_back({center.x + i * resolution, center.y + j * resolution});
    }
  }
  return out;
}

void discretize_free_space(NodeSet& ns, const Environment& env, const GridConfig& cfg,
                           const std::vector<Segment>& keep_clear) {
  cfg.validate(env.constraints);
  FreeSpace fs = env.free_space();
  double d_v_min = env.constraints.d_v_min;
  double d_ve_min = env.constraints.d_ve_min;

  auto blocks_kept_segment = [&](Point p) {
    for (const Segment& s : keep_clear)
      if (segment_point_distance(s, p) < d_ve_min - kGeoTol) return true;
    return false;
  };

  size_t n_seeds = ns.seed_count();
  std::vector<Point> seeds;
  seeds.reserve(n_seeds);
  for (size_t i = 0; i < n_seeds; ++i) seeds.push_back(ns.nodes[i].pos);

  PointIndex index(d_v_min);
  for (const RoadmapNode& n : ns.nodes) index.insert(n.pos);

  for (uint32_t s = 1; s <= cfg.max_size; ++s) {
    for (const Point& seed : seeds) {
      for (const Point& p : local_grid_points(seed, s, cfg.resolution)) {
        if (index.any_within(p, d_v_min - kGeoTol)) continue;
        if (!in_free_space(p, fs)) continue;
        if (blocks_kept_segment(p)) continue;
        index.insert(p);
        ns.nodes.push_back({p, NodeKind::Grid});
      }
    }
  }
}

}  // namespace rmg
