#include "roadmap/model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rmg {

using json = nlohmann::ordered_json;

FreeSpace Environment::free_space() const {
  FreeSpace fs;
  fs.boundary = boundary;
  fs.clearance_radius = robot.r_rob + robot.d_s;
  fs.holes = obstacles;
  for (const Station& st : stations) {
    if (st.is_obstacle && st.footprint) fs.holes.push_back(*st.footprint);
  }
  return fs;
}

std::vector<Point> Environment::interaction_points() const {
  std::vector<Point> pts;
  for (const Station& st : stations) {
    pts.insert(pts.end(), st.interaction_points.begin(), st.interaction_points.end());
  }
  return pts;
}

std::vector<std::pair<uint32_t, uint32_t>> TransportMatrix::directed_pairs() const {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  for (uint32_t i = 0; i < demand.size(); ++i) {
    for (uint32_t j = 0; j < demand.size(); ++j) {
      if (demand[i][j] > 0) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::pair<uint32_t, uint32_t>> TransportMatrix::unordered_pairs() const {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  for (uint32_t i = 0; i < demand.size(); ++i) {
    for (uint32_t j = i + 1; j < demand.size(); ++j) {
      if (demand[i][j] > 0 || demand[j][i] > 0) out.emplace_back(i, j);
    }
  }
  return out;
}

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Station: return "station";
    case NodeKind::Corner: return "corner";
    case NodeKind::Grid: return "grid";
    case NodeKind::Reinserted: return "reinserted";
  }
  return "grid";
}

NodeKind node_kind_from_string(const std::string& s) {
  if (s == "station") return NodeKind::Station;
  if (s == "corner") return NodeKind::Corner;
  if (s == "grid") return NodeKind::Grid;
  if (s == "reinserted") return NodeKind::Reinserted;
  throw ValidationError("unknown node kind '" + s + "'");
}

uint32_t Roadmap::add_node(Point p, NodeKind kind) {
  nodes.push_back({p, kind});
  return static_cast<uint32_t>(nodes.size() - 1);
}

void Roadmap::add_edge(uint32_t a, uint32_t b, uint64_t usage) {
  if (a == b) throw ValidationError("self-loop edge on node " + std::to_string(a));
  if (a > b) std::swap(a, b);
  if (b >= nodes.size()) throw ValidationError("edge endpoint " + std::to_string(b) + " out of range");
  if (has_edge(a, b)) {
    throw ValidationError("duplicate edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  edges.push_back({a, b, distance(nodes[a].pos, nodes[b].pos), usage});
}

bool Roadmap::has_edge(uint32_t a, uint32_t b) const {
  if (a > b) std::swap(a, b);
  return std::any_of(edges.begin(), edges.end(),
                     [&](const RoadmapEdge& e) { return e.a == a && e.b == b; });
}

std::vector<std::vector<uint32_t>> Roadmap::adjacency() const {
  std::vector<std::vector<uint32_t>> adj(nodes.size());
  for (uint32_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].a].push_back(e);
    adj[edges[e].b].push_back(e);
  }
  return adj;
}

bool Roadmap::operator==(const Roadmap& other) const {
  return nodes == other.nodes && edges == other.edges;
}

namespace {

Point parse_point(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError(what + ": expected [x, y]");
  }
  const Point p{j[0].get<double>(), j[1].get<double>()};
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw ValidationError(what + ": coordinates must be finite");
  }
  return p;
}

Polygon parse_polygon(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() < 3) {
    throw ValidationError(what + ": expected at least 3 vertices");
  }
  Polygon poly;
  for (size_t i = 0; i < j.size(); ++i) {
    poly.vertices.push_back(parse_point(j[i], what + " vertex " + std::to_string(i)));
  }
  if (std::abs(poly.signed_area()) <= kGeoTol) {
    throw ValidationError(what + ": zero area");
  }
  if (!poly.is_simple()) {
    throw ValidationError(what + ": self-intersecting polygon");
  }
  poly.normalize_ccw();
  return poly;
}

json parse_text(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError(what + ": invalid JSON");
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Environment load_environment(const std::string& json_text) {
  const json doc = parse_text(json_text, "environment");
  if (!doc.is_object()) throw ValidationError("environment: expected object");
  for (const char* key : {"boundary", "stations", "robot"}) {
    if (!doc.contains(key)) throw ValidationError(std::string("environment: missing '") + key + "'");
  }

  Environment env;
  env.boundary = parse_polygon(doc["boundary"], "boundary");

  if (doc.contains("obstacles")) {
    const json& obs = doc["obstacles"];
    if (!obs.is_array()) throw ValidationError("obstacles: expected array");
    for (size_t i = 0; i < obs.size(); ++i) {
      env.obstacles.push_back(parse_polygon(obs[i], "obstacle " + std::to_string(i)));
    }
  }

  const json& rob = doc["robot"];
  for (const char* key : {"r_rob", "w_rob", "d_s"}) {
    if (!rob.contains(key) || !rob[key].is_number()) {
      throw ValidationError(std::string("robot: missing numeric '") + key + "'");
    }
  }
  env.robot = {rob["r_rob"].get<double>(), rob["w_rob"].get<double>(), rob["d_s"].get<double>()};
  if (env.robot.r_rob <= 0 || env.robot.w_rob <= 0 || env.robot.d_s <= 0) {
    throw ValidationError("robot: dimensions must be positive");
  }
  if (env.robot.w_rob > 2.0 * env.robot.r_rob + kGeoTol) {
    throw ValidationError("robot: width exceeds rotation diameter");
  }
  env.constraints = Constraints::from(env.robot);

  const json& stations = doc["stations"];
  if (!stations.is_array() || stations.empty()) {
    throw ValidationError("stations: expected non-empty array");
  }
  for (const json& js : stations) {
    Station st;
    if (!js.contains("id")) throw ValidationError("station: missing id");
    st.id = js["id"].is_string() ? js["id"].get<std::string>() : js["id"].dump();
    if (js.contains("footprint")) {
      st.footprint = parse_polygon(js["footprint"], "station " + st.id + " footprint");
    }
    st.is_obstacle = js.value("is_obstacle", false);
    if (st.is_obstacle && !st.footprint) {
      throw ValidationError("station " + st.id + ": is_obstacle requires a footprint");
    }
    if (!js.contains("interaction_points") || !js["interaction_points"].is_array() ||
        js["interaction_points"].empty()) {
      throw ValidationError("station " + st.id + ": needs at least one interaction point");
    }
    for (const json& jp : js["interaction_points"]) {
      st.interaction_points.push_back(parse_point(jp, "station " + st.id + " interaction point"));
    }
    env.stations.push_back(std::move(st));
  }

  // Holes must lie inside the boundary.
  const FreeSpace fs = env.free_space();
  for (const Polygon& h : fs.holes) {
    for (const Point& v : h.vertices) {
      if (!env.boundary.contains(v)) {
        throw ValidationError("hole vertex outside boundary");
      }
    }
  }

  // Interaction points must survive the expansion.
  for (const Station& st : env.stations) {
    for (const Point& ip : st.interaction_points) {
      const double c = clearance(ip, fs);
      if (c < fs.clearance_radius - kGeoTol) {
        std::ostringstream msg;
        msg << "station " << st.id << ": interaction point (" << ip.x << ", " << ip.y
            << ") not in free space (clearance " << c << " m, needs " << fs.clearance_radius
            << " m, deficit " << fs.clearance_radius - c << " m)";
        throw ValidationError(msg.str());
      }
    }
  }
  return env;
}

Environment load_environment_file(const std::string& path) {
  return load_environment(read_file(path));
}

TransportMatrix load_transport_matrix(const std::string& json_text, const Environment& env) {
  const json doc = parse_text(json_text, "transport matrix");
  if (!doc.is_object() || !doc.contains("order") || !doc.contains("T")) {
    throw ValidationError("transport matrix: expected {order, T}");
  }
  const size_t n = env.interaction_points().size();

  const json& order = doc["order"];
  if (!order.is_array() || order.size() != n) {
    throw ValidationError("transport matrix: order size " + std::to_string(order.size()) +
                          " does not match " + std::to_string(n) + " interaction points");
  }
  // order maps matrix index -> interaction point id (1-based, station order).
  std::vector<uint32_t> perm(n);
  std::vector<bool> seen(n, false);
  for (size_t i = 0; i < n; ++i) {
    if (!order[i].is_number_unsigned()) throw ValidationError("transport matrix: order entries must be ids");
    const uint64_t id = order[i].get<uint64_t>();
    if (id < 1 || id > n || seen[id - 1]) {
      throw ValidationError("transport matrix: order must be a permutation of 1.." + std::to_string(n));
    }
    seen[id - 1] = true;
    perm[i] = static_cast<uint32_t>(id - 1);
  }

  const json& t = doc["T"];
  if (!t.is_array() || t.size() != n) {
    throw ValidationError("transport matrix: T must be " + std::to_string(n) + " rows");
  }
  TransportMatrix tm;
  tm.demand.assign(n, std::vector<uint64_t>(n, 0));
  for (size_t r = 0; r < n; ++r) {
    if (!t[r].is_array() || t[r].size() != n) {
      throw ValidationError("transport matrix: row " + std::to_string(r) + " must have " +
                            std::to_string(n) + " entries");
    }
    for (size_t c = 0; c < n; ++c) {
      const json& cell = t[r][c];
      if (!cell.is_number_integer() || cell.get<int64_t>() < 0) {
        throw ValidationError("transport matrix: negative or non-integer entry at (" +
                              std::to_string(r) + ", " + std::to_string(c) + ")");
      }
      const uint64_t v = cell.get<uint64_t>();
      if (r == c && v != 0) {
        throw ValidationError("transport matrix: nonzero diagonal at " + std::to_string(r));
      }
      tm.demand[perm[r]][perm[c]] = v;
    }
  }
  return tm;
}

TransportMatrix load_transport_matrix_file(const std::string& path, const Environment& env) {
  return load_transport_matrix(read_file(path), env);
}

std::string roadmap_to_json(const Roadmap& rm) {
  json doc;
  doc["nodes"] = json::array();
  for (uint32_t i = 0; i < rm.nodes.size(); ++i) {
    const RoadmapNode& nd = rm.nodes[i];
    doc["nodes"].push_back({{"id", i}, {"x", nd.pos.x}, {"y", nd.pos.y}, {"kind", to_string(nd.kind)}});
  }
  doc["edges"] = json::array();
  for (const RoadmapEdge& e : rm.edges) {
    doc["edges"].push_back({{"a", e.a}, {"b", e.b}, {"usage", e.usage}});
  }
  return doc.dump(2) + "\n";
}

Roadmap roadmap_from_json(const std::string& json_text) {
  const json doc = parse_text(json_text, "roadmap");
  if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges")) {
    throw ValidationError("roadmap: expected {nodes, edges}");
  }
  Roadmap rm;
  const json& nodes = doc["nodes"];
  rm.nodes.resize(nodes.size());
  std::vector<bool> seen(nodes.size(), false);
  for (const json& jn : nodes) {
    if (!jn.contains("id") || !jn.contains("x") || !jn.contains("y") || !jn.contains("kind")) {
      throw ValidationError("roadmap node: expected {id, x, y, kind}");
    }
    const uint64_t id = jn["id"].get<uint64_t>();
    if (id >= rm.nodes.size() || seen[id]) {
      throw ValidationError("roadmap: node ids must be dense and unique");
    }
    seen[id] = true;
    rm.nodes[id] = {{jn["x"].get<double>(), jn["y"].get<double>()},
                    node_kind_from_string(jn["kind"].get<std::string>())};
  }
  for (const json& je : doc["edges"]) {
    if (!je.contains("a") || !je.contains("b")) throw ValidationError("roadmap edge: expected {a, b}");
    rm.add_edge(je["a"].get<uint32_t>(), je["b"].get<uint32_t>(), je.value("usage", 0ULL));
  }
  return rm;
}

void save_roadmap(const Roadmap& rm, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << roadmap_to_json(rm);
  if (!out) throw ValidationError("write failed for '" + path + "'");
}

Roadmap load_roadmap(const std::string& path) {
  return roadmap_from_json(read_file(path));
}

}  // namespace rmg
