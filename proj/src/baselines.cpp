#include "roadmap/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "roadmap/geom.hpp"
#include "roadmap/spatial.hpp"

namespace rmg {

namespace {

constexpr int kMaxRejections = 10000;

struct Triangle {
  uint32_t a, b, c;
};

// Positive when d lies strictly inside the circumcircle of the CCW triangle
// (a, b, c). Stays at coordinate scale for any triangle shape; an explicit
// circumcenter would blow up for nearly collinear triples.
double circumcircle_det(Point a, Point b, Point c, Point d) {
  double ax = a.x - d.x, ay = a.y - d.y;
  double bx = b.x - d.x, by = b.y - d.y;
  double cx = c.x - d.x, cy = c.y - d.y;
  return (ax * ax + ay * ay) * (bx * cy - by * cx) -
         (bx * bx + by * by) * (ax * cy - ay * cx) +
         (cx * cx + cy * cy) * (ax * by - ay * bx);
}

// Determinants inside this band count as cocircular; either diagonal of such
// a quad is a valid Delaunay choice and stays put.
constexpr double kCircTol = 1e-9;

}  // namespace

BaselineMethod baseline_method_from_string(const std::string& s) {
  if (s == "grid4") return BaselineMethod::Grid4;
  if (s == "grid8") return BaselineMethod::Grid8;
  if (s == "random") return BaselineMethod::Random;
  throw ValidationError("unknown baseline method: " + s);
}

std::string to_string(BaselineMethod m) {
  switch (m) {
    case BaselineMethod::Grid4: return "grid4";
    case BaselineMethod::Grid8: return "grid8";
    case BaselineMethod::Random: return "random";
  }
  return "?";
}

double baseline_spacing(BaselineMethod m, const Constraints& c) {
  switch (m) {
    case BaselineMethod::Grid4: return c.d_v_min;
    case BaselineMethod::Grid8: return ceil_to_centimeter(std::sqrt(2.0) * c.d_ve_min);
    case BaselineMethod::Random: return c.d_v_min;
  }
  return c.d_v_min;
}

NodeSet generate_baseline_nodes(const Environment& env, const BaselineConfig& cfg) {
  NodeSet ns = place_station_nodes(env);
  FreeSpace fs = env.free_space();
  double d_v_min = env.constraints.d_v_min;
  double spacing = baseline_spacing(cfg.method, env.constraints);
  auto [lo, hi] = env.boundary.bounding_box();

  PointIndex index(d_v_min);
  for (const RoadmapNode& n : ns.nodes) index.insert(n.pos);
  auto try_add = [&](Point p) {
    if (index.any_within(p, d_v_min - kGeoTol)) return false;
    if (!in_free_space(p, fs)) return false;
    index.insert(p);
    ns.nodes.push_back({p, NodeKind::Grid});
    return true;
  };

  if (cfg.method == BaselineMethod::Random) {
    std::mt19937_64 rng(cfg.seed);
    // Uniform doubles straight from the generator's bits; identical streams
    // on every platform.
    auto uniform = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    int rejected = 0;
    while (rejected < kMaxRejections) {
      Point p{lo.x + uniform() * (hi.x - lo.x), lo.y + uniform() * (hi.y - lo.y)};
      if (try_add(p))
        rejected = 0;
      else
        ++rejected;
    }
    return ns;
  }

  // Lattice origin sits one clearance radius in from the bounding-box
  // corner: the first row and column that can possibly be free.
  Point origin{lo.x + fs.clearance_radius, lo.y + fs.clearance_radius};
  for (uint32_t j = 0;; ++j) {
    double y = origin.y + j * spacing;
    if (y > hi.y + kGeoTol) break;
    for (uint32_t i = 0;; ++i) {
      double x = origin.x + i * spacing;
      if (x > hi.x + kGeoTol) break;
      try_add({x, y});
    }
  }
  return ns;
}

std::vector<std::pair<uint32_t, uint32_t>> delaunay_triangulation(std::span<const Point> pts) {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  const size_t n = pts.size();
  if (n < 2) return out;
  if (n == 2) {
    out.emplace_back(0, 1);
    return out;
  }

  std::vector<uint32_t> order(n);
  for (uint32_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    if (pts[a].y != pts[b].y) return pts[a].y < pts[b].y;
    return a < b;
  });

  // Triangles below this area scale are never created, so exactly collinear
  // runs (lattice rows) survive as chains instead of slivers. Hull edges are
  // kept by construction, which a finite super-triangle cannot guarantee:
  // boundary slivers own circumcircles of unbounded radius.
  constexpr double kFlat = 1e-9;
  auto orient = [&](uint32_t a, uint32_t b, uint32_t c) {
    return cross(pts[b] - pts[a], pts[c] - pts[a]);
  };

  // Leading collinear run. If everything is collinear there is nothing to
  // triangulate.
  std::vector<uint32_t> chain{order[0], order[1]};
  size_t next = 2;
  while (next < n && std::abs(orient(chain.front(), chain.back(), order[next])) <= kFlat)
    chain.push_back(order[next++]);
  if (next == n) return out;

  std::vector<Triangle> tris;   // all CCW
  std::vector<uint32_t> hull;   // CCW polygon; collinear vertices are kept
  {
    uint32_t p = order[next++];
    bool left = orient(chain.front(), chain.back(), p) > 0.0;
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
      if (left)
        tris.push_back({chain[i], chain[i + 1], p});
      else
        tris.push_back({chain[i + 1], chain[i], p});
    }
    hull = chain;
    if (!left) std::reverse(hull.begin(), hull.end());
    hull.push_back(p);
  }

  for (; next < n; ++next) {
    uint32_t p = order[next];
    const size_t m = hull.size();
    std::vector<uint8_t> vis(m);
    for (size_t i = 0; i < m; ++i) vis[i] = orient(hull[i], hull[(i + 1) % m], p) < -kFlat;

    // Lexicographic insertion keeps p outside the hull, so the strictly
    // visible edges form one contiguous arc.
    size_t first = m, count = 0;
    for (size_t i = 0; i < m; ++i) {
      if (vis[i] && !vis[(i + m - 1) % m]) {
        first = i;
        break;
      }
    }
    if (first == m) {
      // p extends a collinear hull run; splice it in after the nearer
      // endpoint of the run's edge. The degenerate strip has no triangles.
      size_t flat = 0;
      double best = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < m; ++i) {
        double o = std::abs(orient(hull[i], hull[(i + 1) % m], p));
        if (o < best) {
          best = o;
          flat = i;
        }
      }
      hull.insert(hull.begin() + static_cast<ptrdiff_t>(flat) + 1, p);
      continue;
    }
    while (count < m && vis[(first + count) % m]) ++count;

    for (size_t k = 0; k < count; ++k) {
      size_t i = (first + k) % m;
      tris.push_back({hull[(i + 1) % m], hull[i], p});
    }
    std::vector<uint32_t> merged;
    merged.reserve(m - count + 2);
    for (size_t k = 0; k <= m - count; ++k) merged.push_back(hull[(first + count + k) % m]);
    merged.push_back(p);
    hull = std::move(merged);
  }

  // Lawson flips restore the empty-circumcircle property. Each flip needs a
  // strictly positive margin, so the pass terminates and cocircular quads
  // keep whichever diagonal insertion produced.
  struct Side {
    uint32_t tri, u, w, apex;
  };
  for (bool flipped = true; flipped;) {
    flipped = false;
    std::vector<uint8_t> dead(tris.size(), 0);
    std::map<std::pair<uint32_t, uint32_t>, std::vector<Side>> sides;
    for (uint32_t t = 0; t < tris.size(); ++t) {
      auto add = [&](uint32_t u, uint32_t w, uint32_t apex) {
        sides[std::minmax(u, w)].push_back({t, u, w, apex});
      };
      add(tris[t].a, tris[t].b, tris[t].c);
      add(tris[t].b, tris[t].c, tris[t].a);
      add(tris[t].c, tris[t].a, tris[t].b);
    }
    std::vector<Triangle> born;
    for (const auto& [key, ss] : sides) {
      if (ss.size() != 2) continue;  // hull edge
      const Side& s1 = ss[0];
      const Side& s2 = ss[1];
      if (dead[s1.tri] || dead[s2.tri]) continue;
      if (circumcircle_det(pts[s1.u], pts[s1.w], pts[s1.apex], pts[s2.apex]) <= kCircTol)
        continue;
      dead[s1.tri] = dead[s2.tri] = 1;
      born.push_back({s1.u, s2.apex, s1.apex});
      born.push_back({s2.apex, s1.w, s1.apex});
      flipped = true;
    }
    if (flipped) {
      std::vector<Triangle> alive;
      alive.reserve(tris.size());
      for (uint32_t t = 0; t < tris.size(); ++t)
        if (!dead[t]) alive.push_back(tris[t]);
      alive.insert(alive.end(), born.begin(), born.end());
      tris = std::move(alive);
    }
  }

  std::set<std::pair<uint32_t, uint32_t>> edges;
  for (const Triangle& t : tris) {
    auto add = [&](uint32_t x, uint32_t y) { edges.emplace(std::min(x, y), std::max(x, y)); };
    add(t.a, t.b);
    add(t.b, t.c);
    add(t.c, t.a);
  }
  out.assign(edges.begin(), edges.end());
  return out;
}

Roadmap delaunay_edges(const NodeSet& ns, const Environment& env) {
  FreeSpace fs = env.free_space();
  std::vector<Point> pts;
  pts.reserve(ns.nodes.size());
  for (const RoadmapNode& n : ns.nodes) pts.push_back(n.pos);

  Roadmap rm;
  rm.nodes = ns.nodes;
  for (auto [a, b] : delaunay_triangulation(pts)) {
    if (!segment_in_free_space({pts[a], pts[b]}, fs)) continue;
    rm.add_edge(a, b);
  }
  return rm;
}

Roadmap generate_baseline(const Environment& env, const TransportMatrix& demand,
                          const BaselineConfig& cfg, const PenaltyPolicy& policy, bool parallel) {
  NodeSet ns = generate_baseline_nodes(env, cfg);
  Roadmap full = delaunay_edges(ns, env);
  PathSet ps = compute_demand_paths(full, demand, policy, parallel);
  return prune_unused(full, ps);
}

}  // namespace rmg
