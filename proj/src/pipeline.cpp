#include "roadmap/pipeline.hpp"

#include "roadmap/geom.hpp"

namespace rmg {

PipelineStage stage_from_string(const std::string& s) {
  if (s == "visibility") return PipelineStage::Visibility;
  if (s == "full") return PipelineStage::Full;
  if (s == "reduced") return PipelineStage::Reduced;
  if (s == "optimized") return PipelineStage::Optimized;
  throw ValidationError("unknown pipeline stage: " + s);
}

std::string to_string(PipelineStage s) {
  switch (s) {
    case PipelineStage::Visibility: return "visibility";
    case PipelineStage::Full: return "full";
    case PipelineStage::Reduced: return "reduced";
    case PipelineStage::Optimized: return "optimized";
  }
  return "?";
}

GenerateResult generate_roadmap(const Environment& env, const TransportMatrix& demand,
                                const GenerateOptions& opt) {
  GenerateResult res;
  res.nodes = place_station_nodes(env);
  place_corner_nodes(res.nodes, env, demand);

  if (opt.stage == PipelineStage::Visibility) {
    FreeSpace fs = env.free_space();
    std::vector<Point> pts;
    for (const RoadmapNode& n : res.nodes.nodes) pts.push_back(n.pos);
    res.roadmap.nodes = res.nodes.nodes;
    for (const VisEdge& e : visibility_edges(pts, fs)) res.roadmap.add_edge(e.a, e.b);
    return res;
  }

  GridConfig grid = GridConfig::defaults(env);
  if (opt.grid_resolution > 0.0) grid.resolution = opt.grid_resolution;
  grid.validate(env.constraints);
  std::vector<Segment> corridors = demand_corridors(res.nodes, env, demand);
  discretize_free_space(res.nodes, env, grid, corridors);

  EdgeBuildConfig ecfg;
  ecfg.candidate_radius = opt.candidate_radius;
  Roadmap full = build_full_edges(res.nodes, env, ecfg);
  if (opt.stage == PipelineStage::Full) {
    res.roadmap = std::move(full);
    return res;
  }

  if (opt.stage == PipelineStage::Reduced) {
    PathSet ps = compute_demand_paths(full, demand, opt.penalty, opt.parallel);
    res.roadmap = prune_unused(full, ps);
    return res;
  }

  res.roadmap = optimize_roadmap(full, demand, env, opt.penalty, opt.parallel);
  return res;
}

}  // namespace rmg
