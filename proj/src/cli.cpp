#include "roadmap/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "roadmap/baselines.hpp"
#include "roadmap/metrics.hpp"
#include "roadmap/model.hpp"
#include "roadmap/pipeline.hpp"
#include "roadmap/render.hpp"
#include "roadmap/smooth.hpp"

namespace rmg {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ValidationError("write failed for '" + path + "'");
}

std::string base_name(const std::string& path) {
  size_t slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  size_t dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return name;
}

struct GenerateArgs {
  std::string env_path, demand_path, out_path, svg_path;
  std::string stage = "optimized";
  uint32_t k_max = 5;
  double penalty_base = 1.1;
  double d_ad = 0.0;
  double grid_res = 0.0;
};

int run_generate(const GenerateArgs& a) {
  Environment env = load_environment_file(a.env_path);
  TransportMatrix demand = load_transport_matrix_file(a.demand_path, env);

  GenerateOptions opt;
  opt.stage = stage_from_string(a.stage);
  opt.penalty.k_max = a.k_max;
  opt.penalty.base = a.penalty_base;
  opt.grid_resolution = a.grid_res;
  if (!(opt.penalty.base >= 1.0))
    throw ValidationError("penalty base must be at least 1");
  if (a.k_max == 0) throw ValidationError("k-max must be positive");

  GenerateResult res = generate_roadmap(env, demand, opt);
  save_roadmap(res.roadmap, a.out_path);
  std::cout << "stage: " << to_string(opt.stage) << "\n"
            << "nodes: " << res.roadmap.nodes.size() << "\n"
            << "edges: " << res.roadmap.edges.size() << "\n"
            << "wrote " << a.out_path << "\n";

  if (!a.svg_path.empty()) {
    RenderStyle style;
    if (a.d_ad > 0.0) {
      style.smooth_overlay = true;
      style.cut_distance = a.d_ad;
      // Reject bad cut distances before rendering silently succeeds.
      smooth_roadmap(res.roadmap, a.d_ad, env.robot);
    }
    write_file(a.svg_path, render_svg(env, res.roadmap, style));
    std::cout << "wrote " << a.svg_path << "\n";
  }
  return kExitOk;
}

struct BaselineArgs {
  std::string env_path, demand_path, out_path;
  std::string method = "grid4";
  uint64_t seed = 0;
};

int run_baseline(const BaselineArgs& a) {
  Environment env = load_environment_file(a.env_path);
  TransportMatrix demand = load_transport_matrix_file(a.demand_path, env);

  BaselineConfig cfg;
  cfg.method = baseline_method_from_string(a.method);
  cfg.seed = a.seed;
  PenaltyPolicy policy;

  char spacing[32];
  std::snprintf(spacing, sizeof(spacing), "%.2f",
                baseline_spacing(cfg.method, env.constraints));
  Roadmap rm = generate_baseline(env, demand, cfg, policy);
  save_roadmap(rm, a.out_path);
  std::cout << "method: " << to_string(cfg.method) << "\n"
            << "spacing: " << spacing << " m\n"
            << "nodes: " << rm.nodes.size() << "\n"
            << "edges: " << rm.edges.size() << "\n"
            << "wrote " << a.out_path << "\n";
  return kExitOk;
}

struct EvalArgs {
  std::string env_path, demand_path;
  std::vector<std::string> roadmap_paths;
  std::string format = "table";
  bool compare = false;
};

int run_eval(const EvalArgs& a) {
  if (a.format != "table" && a.format != "json")
    throw ValidationError("format must be table or json");
  Environment env = load_environment_file(a.env_path);
  TransportMatrix demand = load_transport_matrix_file(a.demand_path, env);

  std::vector<std::pair<std::string, MetricsReport>> reports;
  for (const std::string& path : a.roadmap_paths) {
    Roadmap rm = load_roadmap(path);
    reports.emplace_back(base_name(path), evaluate(rm, demand, env));
  }
  if (a.format == "json")
    std::cout << metrics_to_json(reports);
  else
    std::cout << metrics_table(reports, a.compare);
  return kExitOk;
}

struct RenderArgs {
  std::string env_path, roadmap_path, out_path;
  bool smooth = false;
  double d_ad = 0.2;
};

int run_render(const RenderArgs& a) {
  Environment env = load_environment_file(a.env_path);
  Roadmap rm = load_roadmap(a.roadmap_path);
  RenderStyle style;
  style.smooth_overlay = a.smooth;
  style.cut_distance = a.d_ad;
  if (a.smooth) smooth_roadmap(rm, a.d_ad, env.robot);  // validates the cut
  write_file(a.out_path, render_svg(env, rm, style));
  std::cout << "wrote " << a.out_path << "\n";
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Roadmap generation for mobile robot fleets"};
  app.require_subcommand(1);

  GenerateArgs ga;
  CLI::App* gen = app.add_subcommand("generate", "Generate a roadmap from an environment");
  gen->add_option("--env", ga.env_path, "environment JSON")->required();
  gen->add_option("--demand", ga.demand_path, "transport matrix JSON")->required();
  gen->add_option("--out", ga.out_path, "output roadmap JSON")->required();
  gen->add_option("--svg", ga.svg_path, "also render the result");
  gen->add_option("--stage", ga.stage, "visibility|full|reduced|optimized");
  gen->add_option("--k-max", ga.k_max, "max alternative paths per pair");
  gen->add_option("--penalty-base", ga.penalty_base, "usage penalty base");
  gen->add_option("--d-ad", ga.d_ad, "corner cut distance for the SVG overlay");
  gen->add_option("--grid-res", ga.grid_res, "grid resolution in meters");

  BaselineArgs ba;
  CLI::App* base = app.add_subcommand("baseline", "Generate a baseline roadmap");
  base->add_option("--env", ba.env_path, "environment JSON")->required();
  base->add_option("--demand", ba.demand_path, "transport matrix JSON")->required();
  base->add_option("--method", ba.method, "grid4|grid8|random")->required();
  base->add_option("--seed", ba.seed, "random seed");
  base->add_option("--out", ba.out_path, "output roadmap JSON")->required();

  EvalArgs ea;
  CLI::App* ev = app.add_subcommand("eval", "Evaluate roadmaps against a demand matrix");
  ev->add_option("--env", ea.env_path, "environment JSON")->required();
  ev->add_option("--demand", ea.demand_path, "transport matrix JSON")->required();
  ev->add_option("--roadmap", ea.roadmap_paths, "roadmap JSON file(s)")->required()
      ->expected(-1);
  ev->add_option("--format", ea.format, "table|json");
  ev->add_flag("--compare", ea.compare, "mark the best value per metric");

  RenderArgs ra;
  CLI::App* ren = app.add_subcommand("render", "Render an environment and roadmap to SVG");
  ren->add_option("--env", ra.env_path, "environment JSON")->required();
  ren->add_option("--roadmap", ra.roadmap_path, "roadmap JSON")->required();
  ren->add_flag("--smooth", ra.smooth, "overlay corner-blend curves");
  ren->add_option("--d-ad", ra.d_ad, "corner cut distance");
  ren->add_option("--out", ra.out_path, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (gen->parsed()) return run_generate(ga);
    if (base->parsed()) return run_baseline(ba);
    if (ev->parsed()) return run_eval(ea);
    if (ren->parsed()) return run_render(ra);
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace rmg
