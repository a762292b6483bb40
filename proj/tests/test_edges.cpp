#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "roadmap/discretize.hpp"
#include "roadmap/edges.hpp"
#include "support/testenv.hpp"

using namespace rmg;
using rmgtest::corridor_env;
using rmgtest::square_env;
using rmgtest::uniform_demand;

namespace {

NodeSet loose_nodes(std::vector<Point> pts) {
  NodeSet ns;
  for (Point p : pts) ns.nodes.push_back({p, NodeKind::Grid});
  return ns;
}

}  // namespace

TEST_CASE("pair in open space connects") {
  Environment env = square_env(20.0);
  NodeSet ns = loose_nodes({{9, 9}, {10.5, 9}});
  Roadmap rm = build_full_edges(ns, env);
  REQUIRE(rm.edges.size() == 1);
  CHECK(rm.edges[0].length == doctest::Approx(1.5));
  CHECK(rm.edges[0].usage == 0);
}

TEST_CASE("edge grazing a third node is rejected") {
  Environment env = square_env(20.0);
  // (9.5, 9) sits exactly 1.0 m from the (8,8)-(11,8) line; 1.0 < 1.075.
  NodeSet ns = loose_nodes({{8, 8}, {11, 8}, {9.5, 9}});
  Roadmap rm = build_full_edges(ns, env);
  CHECK_FALSE(rm.has_edge(0, 1));
  CHECK(rm.has_edge(0, 2));
  CHECK(rm.has_edge(1, 2));
}

TEST_CASE("collinear middle node blocks the long edge") {
  Environment env = square_env(20.0);
  NodeSet ns = loose_nodes({{8, 8}, {9.5, 8}, {11, 8}});
  Roadmap rm = build_full_edges(ns, env);
  CHECK(rm.has_edge(0, 1));
  CHECK(rm.has_edge(1, 2));
  CHECK_FALSE(rm.has_edge(0, 2));
}

TEST_CASE("edges avoid obstacles") {
  Environment env = corridor_env();  // block spans (6,3)-(10,7)
  NodeSet ns = loose_nodes({{5, 5}, {11, 5}, {5, 1.5}, {11, 1.5}});
  Roadmap rm = build_full_edges(ns, env, {100.0});
  CHECK_FALSE(rm.has_edge(0, 1));  // through the block
  CHECK(rm.has_edge(2, 3));        // passes 0.8 m under it
}

TEST_CASE("saturated lattice gets exactly the 8-neighborhood") {
  Environment env;
  env.boundary.vertices = {{0, 0}, {20, 0}, {20, 20}, {0, 20}};
  Station a;
  a.id = "A";
  a.interaction_points.push_back({10, 10});
  env.stations = {a};
  env = rmgtest::finish(env);
  NodeSet ns = place_station_nodes(env);
  discretize_free_space(ns, env, GridConfig{1.6, 32});
  REQUIRE(ns.nodes.size() == 121);  // 11 x 11 lattice

  Roadmap rm = build_full_edges(ns, env, {3 * 1.6});
  // 110 horizontal + 110 vertical + 100 per diagonal direction.
  CHECK(rm.edges.size() == 420);
  for (const RoadmapEdge& e : rm.edges) {
    double dx = std::abs(ns.nodes[e.a].pos.x - ns.nodes[e.b].pos.x);
    double dy = std::abs(ns.nodes[e.a].pos.y - ns.nodes[e.b].pos.y);
    CHECK(dx <= 1.6 + 1e-9);
    CHECK(dy <= 1.6 + 1e-9);
  }

  // The bounded candidate radius loses nothing here: longer edges are all
  // blocked by intermediate lattice nodes.
  Roadmap unbounded = build_full_edges(ns, env, {-1.0});
  CHECK(rm == unbounded);
}

TEST_CASE("every retained edge satisfies both clearance conditions") {
  Environment env = corridor_env();
  TransportMatrix demand = uniform_demand(2);
  NodeSet ns = place_station_nodes(env);
  place_corner_nodes(ns, env, demand);
  discretize_free_space(ns, env, GridConfig::defaults(env));
  Roadmap rm = build_full_edges(ns, env, {3 * GridConfig::defaults(env).resolution});
  REQUIRE(rm.edges.size() > 40);
  FreeSpace fs = env.free_space();
  for (const RoadmapEdge& e : rm.edges) {
    Segment s{rm.nodes[e.a].pos, rm.nodes[e.b].pos};
    CHECK(segment_in_free_space(s, fs));
    for (uint32_t v = 0; v < rm.nodes.size(); ++v) {
      if (v == e.a || v == e.b) continue;
      CHECK(segment_point_distance(s, rm.nodes[v].pos) >= env.constraints.d_ve_min - 1e-9);
    }
  }
  // Output is sorted and free of duplicates.
  for (size_t i = 1; i < rm.edges.size(); ++i) {
    bool ordered = rm.edges[i - 1].a < rm.edges[i].a ||
                   (rm.edges[i - 1].a == rm.edges[i].a && rm.edges[i - 1].b < rm.edges[i].b);
    CHECK(ordered);
  }
}

TEST_CASE("parallel kernel matches the serial reference") {
  Environment env = corridor_env();
  TransportMatrix demand = uniform_demand(2);
  NodeSet ns = place_station_nodes(env);
  place_corner_nodes(ns, env, demand);
  discretize_free_space(ns, env, GridConfig::defaults(env));
  SUBCASE("bounded") {
    EdgeBuildConfig bounded{3 * GridConfig::defaults(env).resolution};
    CHECK(build_full_edges(ns, env, bounded) == build_full_edges_serial(ns, env, bounded));
  }
  SUBCASE("unbounded") {
    CHECK(build_full_edges(ns, env, {-1.0}) == build_full_edges_serial(ns, env, {-1.0}));
  }
}
