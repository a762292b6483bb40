#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "roadmap/model.hpp"

namespace rmg {

struct KanskyIndices {
  double alpha = 0.0;  // (E - V + 1) / (2V - 5)
  double beta = 0.0;   // E / V
  double gamma = 0.0;  // E / (3 (V - 2))
};

// Undefined below three nodes.
KanskyIndices kansky_indices(uint64_t n_nodes, uint64_t n_edges);
KanskyIndices kansky_indices(const Roadmap& rm);

enum class ConnectivityMode { Node, Edge };

struct MetricsReport {
  uint64_t n_nodes = 0;
  uint64_t n_edges = 0;
  uint64_t expanded_astar = 0;
  double mean_node_conn = 0.0;
  double mean_edge_conn = 0.0;
  double algebraic_conn = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma_idx = 0.0;
  double norm_mean_spl = 0.0;
};

// Nodes popped (expanded) by A* with the Euclidean heuristic for one
// directed query. Ties in f resolve toward larger g, then smaller id.
uint64_t astar_expansions_single(const Roadmap& rm, uint32_t s, uint32_t t);

// Sum over all directed demand pairs.
uint64_t astar_expansions(const Roadmap& rm, const TransportMatrix& demand,
                          bool parallel = true);

// Max-flow local connectivity for one pair: edge mode counts edge-disjoint
// paths, node mode internally-disjoint paths (a direct s-t edge contributes
// one).
uint64_t pair_connectivity(const Roadmap& rm, uint32_t s, uint32_t t, ConnectivityMode mode);

// Mean of pair_connectivity over unordered demand pairs.
double mean_connectivity(const Roadmap& rm, const TransportMatrix& demand,
                         ConnectivityMode mode, bool parallel = true);

// Second-smallest Laplacian eigenvalue; zero when disconnected.
double algebraic_connectivity(const Roadmap& rm);

// Mean roadmap shortest-path length over directed demand pairs, divided by
// the same mean on the visibility graph over interaction points and all
// convex corner candidates (the near-optimal continuous reference).
double normalized_mean_spl(const Roadmap& rm, const TransportMatrix& demand,
                           const Environment& env, bool parallel = true);

MetricsReport evaluate(const Roadmap& rm, const TransportMatrix& demand,
                       const Environment& env, bool parallel = true);

std::string metrics_to_json(const std::vector<std::pair<std::string, MetricsReport>>& reports);
// Fixed-width table, one metric per row, one column per roadmap. With
// mark_best, the best value per row is starred (ties star all).
std::string metrics_table(const std::vector<std::pair<std::string, MetricsReport>>& reports,
                          bool mark_best);

}  // namespace rmg
