#include "roadmap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "roadmap/geom.hpp"
#include "roadmap/graph.hpp"

namespace rmg {

namespace {

void check_pair(const Roadmap& rm, uint32_t s, uint32_t t) {
  if (s >= rm.nodes.size() || t >= rm.nodes.size())
    throw ValidationError("query endpoint out of range");
  if (s == t) throw ValidationError("query endpoints coincide");
}

std::vector<std::pair<uint32_t, uint32_t>> demand_pairs_checked(const Roadmap& rm,
                                                                const TransportMatrix& demand,
                                                                bool directed) {
  if (demand.size() > rm.nodes.size())
    throw ValidationError("transport matrix larger than the roadmap node count");
  auto pairs = directed ? demand.directed_pairs() : demand.unordered_pairs();
  if (pairs.empty()) throw ValidationError("transport matrix has no positive entries");
  return pairs;
}

// Dinic max-flow on a small integer network.
class MaxFlow {
 public:
  explicit MaxFlow(uint32_t n) : adj_(n) {}

  void add_edge(uint32_t u, uint32_t v, int64_t cap) {
    adj_[u].push_back({v, cap, static_cast<uint32_t>(adj_[v].size())});
    adj_[v].push_back({u, 0, static_cast<uint32_t>(adj_[u].size()) - 1});
  }

  int64_t run(uint32_t s, uint32_t t) {
    int64_t flow = 0;
    while (bfs(s, t)) {
      iter_.assign(adj_.size(), 0);
      while (int64_t f = dfs(s, t, std::numeric_limits<int64_t>::max())) flow += f;
    }
    return flow;
  }

 private:
  struct Arc {
    uint32_t to;
    int64_t cap;
    uint32_t rev;
  };

  bool bfs(uint32_t s, uint32_t t) {
    level_.assign(adj_.size(), -1);
    std::queue<uint32_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      uint32_t u = q.front();
      q.pop();
      for (const Arc& a : adj_[u]) {
        if (a.cap > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[u] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  int64_t dfs(uint32_t u, uint32_t t, int64_t limit) {
    if (u == t) return limit;
    for (uint32_t& i = iter_[u]; i < adj_[u].size(); ++i) {
      Arc& a = adj_[u][i];
      if (a.cap <= 0 || level_[a.to] != level_[u] + 1) continue;
      int64_t got = dfs(a.to, t, std::min(limit, a.cap));
      if (got > 0) {
        a.cap -= got;
        adj_[a.to][a.rev].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<uint32_t> iter_;
};

double mean_spl_on(const AdjGraph& g, const std::vector<std::pair<uint32_t, uint32_t>>& pairs,
                   const char* what) {
  double total = 0.0;
  uint32_t cached_src = kNoNode;
  ShortestPathTree tree;
  for (auto [i, j] : pairs) {
    if (i != cached_src) {
      tree = dijkstra(g, i);
      cached_src = i;
    }
    if (!tree.reached(j))
      throw InfeasibleError(std::string(what) + " has no path for demand pair (" +
                            std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
    total += tree.dist[j];
  }
  return total / static_cast<double>(pairs.size());
}

std::string fmt_double(double v) {
  if (std::isnan(v)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

KanskyIndices kansky_indices(uint64_t n_nodes, uint64_t n_edges) {
  if (n_nodes < 3) throw ValidationError("graph indices need at least three nodes");
  double v = static_cast<double>(n_nodes);
  double e = static_cast<double>(n_edges);
  KanskyIndices k;
  k.alpha = (e - v + 1.0) / (2.0 * v - 5.0);
  k.beta = e / v;
  k.gamma = e / (3.0 * (v - 2.0));
  return k;
}

KanskyIndices kansky_indices(const Roadmap& rm) {
  return kansky_indices(rm.nodes.size(), rm.edges.size());
}

uint64_t astar_expansions_single(const Roadmap& rm, uint32_t s, uint32_t t) {
  check_pair(rm, s, t);
  AdjGraph g = AdjGraph::from_roadmap(rm);
  Point goal = rm.nodes[t].pos;

  struct Entry {
    double f;
    double g;
    uint32_t id;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.id > b.id;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(rm.nodes.size(), inf);
  std::vector<uint8_t> closed(rm.nodes.size(), 0);

  dist[s] = 0.0;
  open.push({distance(rm.nodes[s].pos, goal), 0.0, s});
  uint64_t expanded = 0;
  while (!open.empty()) {
    Entry e = open.top();
    open.pop();
    if (closed[e.id]) continue;
    closed[e.id] = 1;
    ++expanded;
    if (e.id == t) break;
    for (const auto& arc : g.adj[e.id]) {
      if (closed[arc.to]) continue;
      double nd = e.g + arc.weight;
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        open.push({nd + distance(rm.nodes[arc.to].pos, goal), nd, arc.to});
      }
    }
  }
  return expanded;
}

uint64_t astar_expansions(const Roadmap& rm, const TransportMatrix& demand, bool parallel) {
  auto pairs = demand_pairs_checked(rm, demand, true);
  std::vector<uint64_t> per_pair(pairs.size(), 0);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int64_t p = 0; p < static_cast<int64_t>(pairs.size()); ++p)
    per_pair[p] = astar_expansions_single(rm, pairs[p].first, pairs[p].second);
  uint64_t total = 0;
  for (uint64_t e : per_pair) total += e;
  return total;
}

uint64_t pair_connectivity(const Roadmap& rm, uint32_t s, uint32_t t, ConnectivityMode mode) {
  check_pair(rm, s, t);
  uint32_t n = static_cast<uint32_t>(rm.nodes.size());
  if (mode == ConnectivityMode::Edge) {
    MaxFlow mf(n);
    for (const RoadmapEdge& e : rm.edges) {
      mf.add_edge(e.a, e.b, 1);
      mf.add_edge(e.b, e.a, 1);
    }
    return static_cast<uint64_t>(mf.run(s, t));
  }
  // Node splitting: v_in = 2v, v_out = 2v + 1. Interior nodes carry capacity
  // one; endpoints are uncapacitated. Each undirected edge offers one unit
  // each way, so a direct s-t edge counts once.
  MaxFlow mf(2 * n);
  const int64_t big = n + 1;
  for (uint32_t v = 0; v < n; ++v)
    mf.add_edge(2 * v, 2 * v + 1, (v == s || v == t) ? big : 1);
  for (const RoadmapEdge& e : rm.edges) {
    mf.add_edge(2 * e.a + 1, 2 * e.b, 1);
    mf.add_edge(2 * e.b + 1, 2 * e.a, 1);
  }
  return static_cast<uint64_t>(mf.run(2 * s + 1, 2 * t));
}

double mean_connectivity(const Roadmap& rm, const TransportMatrix& demand, ConnectivityMode mode,
                         bool parallel) {
  auto pairs = demand_pairs_checked(rm, demand, false);
  std::vector<uint64_t> per_pair(pairs.size(), 0);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int64_t p = 0; p < static_cast<int64_t>(pairs.size()); ++p)
    per_pair[p] = pair_connectivity(rm, pairs[p].first, pairs[p].second, mode);
  uint64_t total = 0;
  for (uint64_t c : per_pair) total += c;
  return static_cast<double>(total) / static_cast<double>(pairs.size());
}

double algebraic_connectivity(const Roadmap& rm) {
  size_t n = rm.nodes.size();
  if (n < 2) throw ValidationError("algebraic connectivity needs at least two nodes");

  if (n <= 2000) {
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (const RoadmapEdge& e : rm.edges) {
      lap(e.a, e.a) += 1.0;
      lap(e.b, e.b) += 1.0;
      lap(e.a, e.b) -= 1.0;
      lap(e.b, e.a) -= 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
    return solver.eigenvalues()(1);
  }

  // Large case: inverse iteration on the complement of the all-ones vector.
  // B = L + sigma I is positive definite; repeated B^{-1} (via CG) amplifies
  // the Fiedler direction.
  std::vector<double> deg(n, 0.0);
  for (const RoadmapEdge& e : rm.edges) {
    deg[e.a] += 1.0;
    deg[e.b] += 1.0;
  }
  auto apply_l = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (size_t i = 0; i < n; ++i) y[i] = deg[i] * x[i];
    for (const RoadmapEdge& e : rm.edges) {
      y[e.a] -= x[e.b];
      y[e.b] -= x[e.a];
    }
  };
  const double sigma = 1e-3;
  auto deflate = [&](std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    for (double& v : x) v -= mean;
  };
  auto cg_solve = [&](const std::vector<double>& b, std::vector<double>& x) {
    std::vector<double> r = b, p = b, ap(n);
    x.assign(n, 0.0);
    double rr = 0.0;
    for (double v : r) rr += v * v;
    for (int it = 0; it < 2000 && rr > 1e-20; ++it) {
      apply_l(p, ap);
      for (size_t i = 0; i < n; ++i) ap[i] += sigma * p[i];
      double pap = 0.0;
      for (size_t i = 0; i < n; ++i) pap += p[i] * ap[i];
      double alpha = rr / pap;
      double rr_new = 0.0;
      for (size_t i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
        rr_new += r[i] * r[i];
      }
      for (size_t i = 0; i < n; ++i) p[i] = r[i] + (rr_new / rr) * p[i];
      rr = rr_new;
    }
  };

  std::mt19937 rng(12345);
  std::vector<double> x(n), y(n), lx(n);
  for (double& v : x) v = static_cast<double>(rng() % 1000) / 1000.0;
  deflate(x);
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    cg_solve(x, y);
    deflate(y);
    double nrm = 0.0;
    for (double v : y) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-30) return 0.0;
    for (size_t i = 0; i < n; ++i) x[i] = y[i] / nrm;
    apply_l(x, lx);
    double rq = 0.0;
    for (size_t i = 0; i < n; ++i) rq += x[i] * lx[i];
    if (std::abs(rq - lambda) < 1e-9) return rq;
    lambda = rq;
  }
  return lambda;
}

double normalized_mean_spl(const Roadmap& rm, const TransportMatrix& demand,
                           const Environment& env, bool parallel) {
  (void)parallel;
  std::vector<Point> vis_nodes = env.interaction_points();
  size_t n_ip = vis_nodes.size();
  if (demand.size() != n_ip)
    throw ValidationError("transport matrix order does not match interaction point count");
  auto pairs = demand_pairs_checked(rm, demand, true);

  AdjGraph g = AdjGraph::from_roadmap(rm);
  double rm_mean = mean_spl_on(g, pairs, "roadmap");

  // Continuous reference: shortest paths in the visibility graph spanned by
  // the interaction points and every convex corner candidate.
  FreeSpace fs = env.free_space();
  std::vector<Point> cand = convex_corner_candidates(fs);
  vis_nodes.insert(vis_nodes.end(), cand.begin(), cand.end());
  AdjGraph vg(vis_nodes.size());
  for (const VisEdge& e : visibility_edges(vis_nodes, fs)) vg.add_undirected(e.a, e.b, e.length, 0);
  double vis_mean = mean_spl_on(vg, pairs, "free space");

  return rm_mean / vis_mean;
}

MetricsReport evaluate(const Roadmap& rm, const TransportMatrix& demand, const Environment& env,
                       bool parallel) {
  MetricsReport r;
  r.n_nodes = rm.nodes.size();
  r.n_edges = rm.edges.size();
  r.expanded_astar = astar_expansions(rm, demand, parallel);
  r.mean_node_conn = mean_connectivity(rm, demand, ConnectivityMode::Node, parallel);
  r.mean_edge_conn = mean_connectivity(rm, demand, ConnectivityMode::Edge, parallel);
  r.algebraic_conn = algebraic_connectivity(rm);
  if (r.n_nodes >= 3) {
    KanskyIndices k = kansky_indices(rm);
    r.alpha = k.alpha;
    r.beta = k.beta;
    r.gamma_idx = k.gamma;
  } else {
    r.alpha = std::numeric_limits<double>::quiet_NaN();
    r.beta = r.n_nodes ? static_cast<double>(r.n_edges) / static_cast<double>(r.n_nodes)
                       : std::numeric_limits<double>::quiet_NaN();
    r.gamma_idx = std::numeric_limits<double>::quiet_NaN();
  }
  r.norm_mean_spl = normalized_mean_spl(rm, demand, env, parallel);
  return r;
}

namespace {

struct MetricRow {
  const char* label;
  const char* key;
  int ideal;  // -1 minimize, +1 maximize, 0 closest to one
  bool integer;
  double (*get)(const MetricsReport&);
};

const MetricRow kRows[] = {
    {"nodes", "n_nodes", -1, true, [](const MetricsReport& r) { return double(r.n_nodes); }},
    {"edges", "n_edges", -1, true, [](const MetricsReport& r) { return double(r.n_edges); }},
    {"astar expansions", "expanded_astar", -1, true,
     [](const MetricsReport& r) { return double(r.expanded_astar); }},
    {"mean node connectivity", "mean_node_conn", 1, false,
     [](const MetricsReport& r) { return r.mean_node_conn; }},
    {"mean edge connectivity", "mean_edge_conn", 1, false,
     [](const MetricsReport& r) { return r.mean_edge_conn; }},
    {"algebraic connectivity", "algebraic_conn", 0, false,
     [](const MetricsReport& r) { return r.algebraic_conn; }},
    {"alpha index", "alpha", 0, false, [](const MetricsReport& r) { return r.alpha; }},
    {"beta index", "beta", 1, false, [](const MetricsReport& r) { return r.beta; }},
    {"gamma index", "gamma_idx", 0, false, [](const MetricsReport& r) { return r.gamma_idx; }},
    {"normalized mean SPL", "norm_mean_spl", 0, false,
     [](const MetricsReport& r) { return r.norm_mean_spl; }},
};

}  // namespace

std::string metrics_to_json(const std::vector<std::pair<std::string, MetricsReport>>& reports) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < reports.size(); ++i) {
    const auto& [name, r] = reports[i];
    if (i) os << ",";
    os << "\n  {\"name\": \"" << name << "\"";
    for (const MetricRow& row : kRows) {
      double v = row.get(r);
      os << ", \"" << row.key << "\": ";
      if (std::isnan(v))
        os << "null";
      else if (row.integer)
        os << static_cast<uint64_t>(v);
      else {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.6f", v);
        os << buf;
      }
    }
    os << "}";
  }
  os << "\n]\n";
  return os.str();
}

std::string metrics_table(const std::vector<std::pair<std::string, MetricsReport>>& reports,
                          bool mark_best) {
  std::vector<std::vector<std::string>> cells;  // row-major, header first
  std::vector<std::string> header{"metric"};
  for (const auto& [name, r] : reports) header.push_back(name);
  cells.push_back(header);

  for (const MetricRow& row : kRows) {
    std::vector<double> vals;
    for (const auto& [name, r] : reports) vals.push_back(row.get(r));

    std::vector<bool> starred(vals.size(), false);
    if (mark_best && reports.size() > 1) {
      auto score = [&](double v) {
        if (std::isnan(v)) return std::numeric_limits<double>::infinity();
        if (row.ideal < 0) return v;
        if (row.ideal > 0) return -v;
        return std::abs(v - 1.0);
      };
      double best = score(vals[0]);
      for (size_t i = 1; i < vals.size(); ++i) best = std::min(best, score(vals[i]));
      if (best < std::numeric_limits<double>::infinity())
        for (size_t i = 0; i < vals.size(); ++i) starred[i] = score(vals[i]) == best;
    }

    std::vector<std::string> line{row.label};
    for (size_t i = 0; i < vals.size(); ++i) {
      std::string s = row.integer && !std::isnan(vals[i])
                          ? std::to_string(static_cast<uint64_t>(vals[i]))
                          : fmt_double(vals[i]);
      if (starred[i]) s += " *";
      line.push_back(s);
    }
    cells.push_back(line);
  }

  std::vector<size_t> width(cells[0].size(), 0);
  for (const auto& line : cells)
    for (size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());

  std::ostringstream os;
  for (size_t li = 0; li < cells.size(); ++li) {
    const auto& line = cells[li];
    for (size_t c = 0; c < line.size(); ++c) {
      os << line[c] << std::string(width[c] - line[c].size(), ' ');
      if (c + 1 < line.size()) os << "  ";
    }
    os << "\n";
    if (li == 0) {
      size_t total = 0;
      for (size_t c = 0; c < width.size(); ++c) total += width[c] + (c + 1 < width.size() ? 2 : 0);
      os << std::string(total, '-') << "\n";
    }
  }
  return os.str();
}

}  // namespace rmg
