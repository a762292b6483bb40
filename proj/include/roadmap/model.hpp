#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "roadmap/geom.hpp"

namespace rmg {

// Invalid or inconsistent input (bad file, violated schema, malformed
// geometry). The CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally valid input that cannot be routed (disconnected demand pair).
// The CLI maps this to exit code 3.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Robot {
  double r_rob = 0.5;   // rotation radius, m
  double w_rob = 0.35;  // width, m
  double d_s = 0.2;     // safety distance, m
};

// Minimum distance constraints derived from the robot. Never set directly.
struct Constraints {
  double d_v_min = 0.0;   // node-node
  double d_ve_min = 0.0;  // node to non-incident edge

  static Constraints from(const Robot& r) {
    return {2.0 * (r.r_rob + r.d_s), r.r_rob + r.w_rob / 2.0 + 2.0 * r.d_s};
  }
};

struct Station {
  std::string id;
  std::optional<Polygon> footprint;
  std::vector<Point> interaction_points;
  bool is_obstacle = false;
};

struct Environment {
  Polygon boundary;
  std::vector<Polygon> obstacles;
  std::vector<Station> stations;
  Robot robot;
  Constraints constraints;

  // Holes are the obstacles followed by obstacle-station footprints, in
  // input order. Corner candidate ids depend on this order.
  FreeSpace free_space() const;

  // All interaction points, station order then point order. Index in this
  // list is the global interaction-point index (id = index + 1 in files).
  std::vector<Point> interaction_points() const;
};

struct TransportMatrix {
  std::vector<std::vector<uint64_t>> demand;  // demand[i][j], zero diagonal

  size_t size() const { return demand.size(); }
  uint64_t at(uint32_t i, uint32_t j) const { return demand[i][j]; }

  // (i, j) with demand > 0, row-major. Processing order is significant for
  // determinism downstream.
  std::vector<std::pair<uint32_t, uint32_t>> directed_pairs() const;
  // {i, j} with demand in either direction, i < j, row-major.
  std::vector<std::pair<uint32_t, uint32_t>> unordered_pairs() const;
};

enum class NodeKind : uint8_t { Station, Corner, Grid, Reinserted };

const char* to_string(NodeKind k);
NodeKind node_kind_from_string(const std::string& s);

struct RoadmapNode {
  Point pos;
  NodeKind kind = NodeKind::Grid;
};

struct RoadmapEdge {
  uint32_t a = 0;  // a < b always
  uint32_t b = 0;
  double length = 0.0;
  uint64_t usage = 0;
};

// Node ids are dense indices into nodes. Station nodes occupy the leading
// indices in interaction-point order at every pipeline stage.
struct Roadmap {
  std::vector<RoadmapNode> nodes;
  std::vector<RoadmapEdge> edges;

  uint32_t add_node(Point p, NodeKind kind);
  // Keeps edges normalized (a < b) and lengths consistent; rejects
  // self-loops and duplicates.
  void add_edge(uint32_t a, uint32_t b, uint64_t usage = 0);
  bool has_edge(uint32_t a, uint32_t b) const;

  std::vector<std::vector<uint32_t>> adjacency() const;  // node -> edge indices

  bool operator==(const Roadmap& other) const;
};

inline bool operator==(const RoadmapNode& a, const RoadmapNode& b) {
  return a.pos.x == b.pos.x && a.pos.y == b.pos.y && a.kind == b.kind;
}
inline bool operator==(const RoadmapEdge& a, const RoadmapEdge& b) {
  return a.a == b.a && a.b == b.b && a.length == b.length && a.usage == b.usage;
}

Environment load_environment(const std::string& json_text);
Environment load_environment_file(const std::string& path);

TransportMatrix load_transport_matrix(const std::string& json_text, const Environment& env);
TransportMatrix load_transport_matrix_file(const std::string& path, const Environment& env);

std::string roadmap_to_json(const Roadmap& rm);
Roadmap roadmap_from_json(const std::string& json_text);
void save_roadmap(const Roadmap& rm, const std::string& path);
Roadmap load_roadmap(const std::string& path);

}  // namespace rmg
