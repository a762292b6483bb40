#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "roadmap/geom.hpp"
#include "roadmap/pipeline.hpp"
#include "support/testenv.hpp"

using namespace rmg;
using rmgtest::corridor_env;
using rmgtest::data_path;
using rmgtest::square_env;
using rmgtest::uniform_demand;

namespace {

bool stations_connected(const Roadmap& rm, uint32_t s, uint32_t t) {
  auto adj = rm.adjacency();
  std::vector<bool> seen(rm.nodes.size(), false);
  std::vector<uint32_t> stack{s};
  seen[s] = true;
  while (!stack.empty()) {
    uint32_t v = stack.back();
    stack.pop_back();
    for (uint32_t e : adj[v]) {
      uint32_t w = rm.edges[e].a == v ? rm.edges[e].b : rm.edges[e].a;
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen[t];
}

size_t crossing_count(const Roadmap& rm) {
  size_t count = 0;
  for (size_t i = 0; i < rm.edges.size(); ++i) {
    Segment a{rm.nodes[rm.edges[i].a].pos, rm.nodes[rm.edges[i].b].pos};
    for (size_t j = i + 1; j < rm.edges.size(); ++j) {
      Segment b{rm.nodes[rm.edges[j].a].pos, rm.nodes[rm.edges[j].b].pos};
      if (segments_cross(a, b)) ++count;
    }
  }
  return count;
}

void check_invariants(const Roadmap& rm, const Environment& env) {
  FreeSpace fs = env.free_space();
  const double tol = 1e-9;
  const size_t n_ip = env.interaction_points().size();
  REQUIRE(rm.nodes.size() >= n_ip);
  for (size_t i = 0; i < n_ip; ++i) CHECK(rm.nodes[i].kind == NodeKind::Station);
  for (const RoadmapNode& n : rm.nodes) CHECK(in_free_space(n.pos, fs));
  for (size_t i = 0; i < rm.nodes.size(); ++i)
    for (size_t j = i + 1; j < rm.nodes.size(); ++j)
      CHECK(distance(rm.nodes[i].pos, rm.nodes[j].pos) >= env.constraints.d_v_min - tol);
  for (const RoadmapEdge& e : rm.edges) {
    Segment s{rm.nodes[e.a].pos, rm.nodes[e.b].pos};
    CHECK(segment_in_free_space(s, fs));
    CHECK(e.length == doctest::Approx(s.length()).epsilon(1e-12));
    for (size_t k = 0; k < rm.nodes.size(); ++k) {
      if (k == e.a || k == e.b) continue;
      CHECK(segment_point_distance(s, rm.nodes[k].pos) >= env.constraints.d_ve_min - tol);
    }
  }
  CHECK(crossing_count(rm) == 0);
}

}  // namespace

TEST_CASE("stage names round-trip") {
  for (auto s : {PipelineStage::Visibility, PipelineStage::Full, PipelineStage::Reduced,
                 PipelineStage::Optimized}) {
    CHECK(stage_from_string(to_string(s)) == s);
  }
  CHECK_THROWS_AS(stage_from_string("polished"), ValidationError);
}

TEST_CASE("grid resolution below the feasible step is rejected") {
  Environment env = square_env();
  GenerateOptions opt;
  opt.grid_resolution = 1.0;
  CHECK_THROWS_AS(generate_roadmap(env, uniform_demand(2), opt), ValidationError);
}

TEST_CASE("visibility stage on an empty hall is the station graph") {
  Environment env = square_env();
  GenerateOptions opt;
  opt.stage = PipelineStage::Visibility;
  GenerateResult res = generate_roadmap(env, uniform_demand(2), opt);
  CHECK(res.roadmap.nodes.size() == 2);
  CHECK(res.nodes.corner_count == 0);
  REQUIRE(res.roadmap.edges.size() == 1);
  CHECK(res.roadmap.has_edge(0, 1));
}

TEST_CASE("stages refine the corridor scene in order") {
  Environment env = corridor_env();
  TransportMatrix demand = uniform_demand(2);

  GenerateOptions opt;
  opt.stage = PipelineStage::Visibility;
  GenerateResult vis = generate_roadmap(env, demand, opt);
  CHECK(vis.roadmap.nodes.size() == 2 + 4);  // stations plus block corners
  for (const RoadmapNode& n : vis.roadmap.nodes)
    CHECK((n.kind == NodeKind::Station || n.kind == NodeKind::Corner));
  CHECK(stations_connected(vis.roadmap, 0, 1));

  opt.stage = PipelineStage::Full;
  GenerateResult full = generate_roadmap(env, demand, opt);
  CHECK(full.roadmap.nodes.size() > vis.roadmap.nodes.size());
  bool has_grid = false;
  for (const RoadmapNode& n : full.roadmap.nodes)
    if (n.kind == NodeKind::Grid) has_grid = true;
  CHECK(has_grid);
  CHECK(crossing_count(full.roadmap) > 0);  // cell diagonals cross each other

  opt.stage = PipelineStage::Reduced;
  GenerateResult red = generate_roadmap(env, demand, opt);
  CHECK(red.roadmap.nodes.size() <= full.roadmap.nodes.size());
  CHECK(red.roadmap.edges.size() < full.roadmap.edges.size());
  for (const RoadmapEdge& e : red.roadmap.edges) CHECK(e.usage >= 1);
  CHECK(stations_connected(red.roadmap, 0, 1));

  opt.stage = PipelineStage::Optimized;
  GenerateResult fin = generate_roadmap(env, demand, opt);
  CHECK(stations_connected(fin.roadmap, 0, 1));
  for (const RoadmapEdge& e : fin.roadmap.edges) CHECK(e.usage >= 1);
  check_invariants(fin.roadmap, env);
}

TEST_CASE("optimized roadmap for the abstract scene") {
  Environment env = load_environment_file(data_path("abstract.json"));
  TransportMatrix demand = load_transport_matrix_file(data_path("abstract_demand.json"), env);
  GenerateResult res = generate_roadmap(env, demand);
  check_invariants(res.roadmap, env);
  for (auto [i, j] : demand.unordered_pairs()) CHECK(stations_connected(res.roadmap, i, j));
  // No isolated nodes survive the optimization.
  auto adj = res.roadmap.adjacency();
  for (const auto& edges_at : adj) CHECK(!edges_at.empty());
}

TEST_CASE("generation is deterministic and parallel-safe") {
  Environment env = load_environment_file(data_path("abstract.json"));
  TransportMatrix demand = load_transport_matrix_file(data_path("abstract_demand.json"), env);
  GenerateResult a = generate_roadmap(env, demand);
  GenerateResult b = generate_roadmap(env, demand);
  CHECK(a.roadmap == b.roadmap);
  GenerateOptions serial;
  serial.parallel = false;
  GenerateResult c = generate_roadmap(env, demand, serial);
  CHECK(a.roadmap == c.roadmap);
}

TEST_CASE("explicit grid resolution widens the lattice") {
  Environment env = corridor_env();
  TransportMatrix demand = uniform_demand(2);
  GenerateOptions coarse;
  coarse.stage = PipelineStage::Full;
  coarse.grid_resolution = 2.5;
  GenerateResult wide = generate_roadmap(env, demand, coarse);
  GenerateOptions fine;
  fine.stage = PipelineStage::Full;
  GenerateResult dense = generate_roadmap(env, demand, fine);
  CHECK(wide.roadmap.nodes.size() < dense.roadmap.nodes.size());
}
