// Compares the OpenMP kernels against their serial references on a synthetic
// warehouse: visibility graph, full edge construction, per-pair path search,
// and per-pair metrics. Prints wall times and checks the outputs agree.

#include <chrono>
#include <cstdio>
#include <string>

#include "roadmap/discretize.hpp"
#include "roadmap/edges.hpp"
#include "roadmap/geom.hpp"
#include "roadmap/metrics.hpp"
#include "roadmap/model.hpp"
#include "roadmap/optimize.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace rmg;

namespace {

double now_ms() {
  auto t = std::chrono::steady_clock::now().time_since_epoch();
  return std::chrono::duration<double, std::milli>(t).count();
}

// Hall with rows of rack obstacles and stations along two walls.
Environment make_hall(int racks_x, int racks_y) {
  Environment env;
  double w = 6.0 * racks_x + 6.0;
  double h = 5.0 * racks_y + 8.0;
  env.boundary.vertices = {{0, 0}, {w, 0}, {w, h}, {0, h}};
  for (int i = 0; i < racks_x; ++i) {
    for (int j = 0; j < racks_y; ++j) {
      double x0 = 4.0 + 6.0 * i, y0 = 4.0 + 5.0 * j;
      Polygon rack;
      rack.vertices = {{x0, y0}, {x0 + 4.0, y0}, {x0 + 4.0, y0 + 2.0}, {x0, y0 + 2.0}};
      env.obstacles.push_back(rack);
    }
  }
  int n_st = std::max(2, racks_x);
  for (int s = 0; s < n_st; ++s) {
    Station st;
    st.id = "S" + std::to_string(s + 1);
    double x = 3.0 + s * (w - 6.0) / std::max(1, n_st - 1);
    st.interaction_points.push_back({x, s % 2 ? h - 1.5 : 1.5});
    env.stations.push_back(st);
  }
  env.robot = {0.5, 0.35, 0.2};
  env.constraints = Constraints::from(env.robot);
  return env;
}

TransportMatrix uniform_demand(size_t n) {
  TransportMatrix t;
  t.demand.assign(n, std::vector<uint64_t>(n, 3));
  for (size_t i = 0; i < n; ++i) t.demand[i][i] = 0;
  return t;
}

struct Timed {
  double ms;
  std::string detail;
};

void report(const char* kernel, const Timed& serial, const Timed& parallel) {
  std::printf("%-24s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n", kernel,
              serial.ms, parallel.ms, serial.ms / parallel.ms, parallel.detail.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  int racks = argc > 1 ? std::atoi(argv[1]) : 4;
  Environment env = make_hall(racks, 3);
  TransportMatrix demand = uniform_demand(env.interaction_points().size());
  FreeSpace fs = env.free_space();

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  NodeSet ns = place_station_nodes(env);
  place_corner_nodes(ns, env, demand);
  std::vector<Point> pts;
  for (const RoadmapNode& n : ns.nodes) pts.push_back(n.pos);

  double t0 = now_ms();
  auto vis_s = visibility_edges_serial(pts, fs);
  double t1 = now_ms();
  auto vis_p = visibility_edges(pts, fs);
  double t2 = now_ms();
  report("visibility graph", {t1 - t0, ""}, {t2 - t1, vis_s == vis_p ? "match" : "MISMATCH"});

  discretize_free_space(ns, env, GridConfig::defaults(env));
  std::printf("nodes after discretization: %zu\n", ns.nodes.size());

  EdgeBuildConfig ecfg;
  ecfg.candidate_radius = 3.0 * GridConfig::defaults(env).resolution;
  t0 = now_ms();
  Roadmap full_s = build_full_edges_serial(ns, env, ecfg);
  t1 = now_ms();
  Roadmap full_p = build_full_edges(ns, env, ecfg);
  t2 = now_ms();
  report("full edges", {t1 - t0, ""}, {t2 - t1, full_s == full_p ? "match" : "MISMATCH"});

  PenaltyPolicy policy;
  t0 = now_ms();
  PathSet ps_s = compute_demand_paths(full_p, demand, policy, false);
  t1 = now_ms();
  PathSet ps_p = compute_demand_paths(full_p, demand, policy, true);
  t2 = now_ms();
  bool paths_match = ps_s.edge_usage == ps_p.edge_usage;
  report("demand paths", {t1 - t0, ""}, {t2 - t1, paths_match ? "match" : "MISMATCH"});

  Roadmap reduced = prune_unused(full_p, ps_p);
  t0 = now_ms();
  uint64_t exp_s = astar_expansions(reduced, demand, false);
  double conn_s = mean_connectivity(reduced, demand, ConnectivityMode::Node, false);
  t1 = now_ms();
  uint64_t exp_p = astar_expansions(reduced, demand, true);
  double conn_p = mean_connectivity(reduced, demand, ConnectivityMode::Node, true);
  t2 = now_ms();
  bool metrics_match = exp_s == exp_p && conn_s == conn_p;
  report("pair metrics", {t1 - t0, ""}, {t2 - t1, metrics_match ? "match" : "MISMATCH"});

  return 0;
}
