#pragma once

#include <string>

#include "roadmap/discretize.hpp"
#include "roadmap/edges.hpp"
#include "roadmap/model.hpp"
#include "roadmap/optimize.hpp"

namespace rmg {

// The four pipeline stages a generation run can stop at: the visibility
// graph over station and corner nodes, the full grid-connected roadmap, the
// demand-pruned roadmap, and the planarized/refined result.
enum class PipelineStage { Visibility, Full, Reduced, Optimized };

PipelineStage stage_from_string(const std::string& s);
std::string to_string(PipelineStage s);

struct GenerateOptions {
  double grid_resolution = 0.0;    // <= 0: derived from the constraints
  double candidate_radius = 0.0;   // <= 0: unbounded
  PenaltyPolicy penalty;
  PipelineStage stage = PipelineStage::Optimized;
  bool parallel = true;
};

struct GenerateResult {
  NodeSet nodes;
  Roadmap roadmap;  // at the requested stage
};

// Runs node placement, edge construction, and reduction up to the requested
// stage. The visibility stage connects only station and corner nodes.
GenerateResult generate_roadmap(const Environment& env, const TransportMatrix& demand,
                                const GenerateOptions& opt = {});

}  // namespace rmg
