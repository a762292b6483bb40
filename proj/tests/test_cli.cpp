#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "roadmap/model.hpp"
#include "support/testenv.hpp"

namespace fs = std::filesystem;
using rmgtest::data_path;

namespace {

const fs::path& work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "roadmap_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  static int counter = 0;
  fs::path log = work_dir() / ("out_" + std::to_string(counter++) + ".log");
  std::string cmd = std::string(RMG_BIN_DIR) + "/roadmap " + args + " >'" + log.string() +
                    "' 2>&1";
  int status = std::system(cmd.c_str());
  if (output) *output = slurp(log);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

// Hall split in two by a full-height wall; the station pair cannot connect.
void write_split_scene(fs::path env_path, fs::path demand_path) {
  std::ofstream env(env_path);
  env << R"({
    "boundary": [[0, 0], [16, 0], [16, 10], [0, 10]],
    "obstacles": [[[7.5, 0], [8.5, 0], [8.5, 10], [7.5, 10]]],
    "stations": [
      {"id": "A", "interaction_points": [[2, 5]]},
      {"id": "B", "interaction_points": [[14, 5]]}
    ],
    "robot": {"r_rob": 0.5, "w_rob": 0.35, "d_s": 0.2}
  })";
  std::ofstream demand(demand_path);
  demand << R"({"order": [1, 2], "T": [[0, 3], [3, 0]]})";
}

}  // namespace

TEST_CASE("generate produces a loadable roadmap") {
  fs::path out = work_dir() / "abstract_own.json";
  fs::path svg = work_dir() / "abstract_own.svg";
  std::string log;
  int code = run_cli("generate --env " + q(data_path("abstract.json")) + " --demand " +
                         q(data_path("abstract_demand.json")) + " --out " + q(out) + " --svg " +
                         q(svg),
                     &log);
  CHECK(code == 0);
  CHECK(log.find("stage: optimized") != std::string::npos);
  CHECK(log.find("wrote") != std::string::npos);

  rmg::Roadmap rm = rmg::load_roadmap(out.string());
  CHECK(rm.nodes.size() >= 3);
  CHECK(!rm.edges.empty());

  std::string svg_text = slurp(svg);
  CHECK(svg_text.find("<svg") != std::string::npos);
}

TEST_CASE("generate is byte-stable across runs") {
  fs::path out1 = work_dir() / "stable_1.json";
  fs::path out2 = work_dir() / "stable_2.json";
  std::string args = "generate --env " + q(data_path("abstract.json")) + " --demand " +
                     q(data_path("abstract_demand.json")) + " --out ";
  CHECK(run_cli(args + q(out1)) == 0);
  CHECK(run_cli(args + q(out2)) == 0);
  std::string a = slurp(out1), b = slurp(out2);
  REQUIRE(!a.empty());
  CHECK(a == b);
}

TEST_CASE("generate stage and option validation") {
  fs::path out = work_dir() / "unused.json";
  std::string base = "generate --env " + q(data_path("abstract.json")) + " --demand " +
                     q(data_path("abstract_demand.json")) + " --out " + q(out);
  CHECK(run_cli(base + " --stage polished") == 2);
  CHECK(run_cli(base + " --penalty-base 0.5") == 2);
  CHECK(run_cli(base + " --k-max 0") == 2);
  CHECK(run_cli(base + " --grid-res 0.3") == 2);
  CHECK(run_cli(base + " --stage visibility") == 0);
}

TEST_CASE("missing inputs and bad invocations exit with validation") {
  fs::path out = work_dir() / "unused2.json";
  std::string log;
  CHECK(run_cli("generate --env /nonexistent.json --demand " +
                    q(data_path("abstract_demand.json")) + " --out " + q(out),
                &log) == 2);
  CHECK(log.find("error") != std::string::npos);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("frobnicate --env x") == 2);
  CHECK(run_cli("--help") == 0);
}

TEST_CASE("disconnected demand is infeasible") {
  fs::path env = work_dir() / "split_env.json";
  fs::path demand = work_dir() / "split_demand.json";
  write_split_scene(env, demand);
  fs::path out = work_dir() / "split_out.json";
  std::string log;
  int code = run_cli("generate --env " + q(env) + " --demand " + q(demand) + " --out " + q(out),
                     &log);
  CHECK(code == 3);
  CHECK(log.find("error") != std::string::npos);
}

TEST_CASE("baseline reports its spacing") {
  fs::path out = work_dir() / "base_grid4.json";
  std::string common = "baseline --env " + q(data_path("abstract.json")) + " --demand " +
                       q(data_path("abstract_demand.json")) + " --out ";
  std::string log;
  CHECK(run_cli(common + q(out) + " --method grid4", &log) == 0);
  CHECK(log.find("spacing: 1.40 m") != std::string::npos);

  fs::path out8 = work_dir() / "base_grid8.json";
  CHECK(run_cli(common + q(out8) + " --method grid8", &log) == 0);
  CHECK(log.find("spacing: 1.53 m") != std::string::npos);

  CHECK(run_cli(common + q(out) + " --method grid16", &log) == 2);
}

TEST_CASE("random baseline honors its seed") {
  std::string common = "baseline --env " + q(data_path("abstract.json")) + " --demand " +
                       q(data_path("abstract_demand.json")) + " --method random ";
  fs::path a = work_dir() / "rand_a.json";
  fs::path b = work_dir() / "rand_b.json";
  fs::path c = work_dir() / "rand_c.json";
  CHECK(run_cli(common + "--seed 11 --out " + q(a)) == 0);
  CHECK(run_cli(common + "--seed 11 --out " + q(b)) == 0);
  CHECK(run_cli(common + "--seed 12 --out " + q(c)) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
}

TEST_CASE("eval compares roadmaps in both formats") {
  fs::path own = work_dir() / "eval_own.json";
  fs::path grid = work_dir() / "eval_grid4.json";
  REQUIRE(run_cli("generate --env " + q(data_path("abstract.json")) + " --demand " +
                  q(data_path("abstract_demand.json")) + " --out " + q(own)) == 0);
  REQUIRE(run_cli("baseline --env " + q(data_path("abstract.json")) + " --demand " +
                  q(data_path("abstract_demand.json")) + " --method grid4 --out " + q(grid)) == 0);

  std::string common = "eval --env " + q(data_path("abstract.json")) + " --demand " +
                       q(data_path("abstract_demand.json")) + " --roadmap " + q(own) + " " +
                       q(grid);
  std::string log;
  CHECK(run_cli(common + " --format json", &log) == 0);
  nlohmann::json j = nlohmann::json::parse(log);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["name"] == "eval_own");
  CHECK(j[1]["name"] == "eval_grid4");
  CHECK(j[0]["n_nodes"].get<uint64_t>() >= 3);
  CHECK(j[0]["norm_mean_spl"].get<double>() >= 1.0);

  CHECK(run_cli(common + " --format table --compare", &log) == 0);
  CHECK(log.find("normalized mean SPL") != std::string::npos);
  CHECK(log.find('*') != std::string::npos);

  CHECK(run_cli(common + " --format yaml", &log) == 2);
}

TEST_CASE("render writes an svg and validates the cut distance") {
  fs::path own = work_dir() / "render_own.json";
  REQUIRE(run_cli("generate --env " + q(data_path("abstract.json")) + " --demand " +
                  q(data_path("abstract_demand.json")) + " --out " + q(own)) == 0);
  fs::path svg = work_dir() / "render_own.svg";
  std::string common = "render --env " + q(data_path("abstract.json")) + " --roadmap " + q(own) +
                       " --out " + q(svg);
  CHECK(run_cli(common) == 0);
  CHECK(slurp(svg).find("<svg") != std::string::npos);

  CHECK(run_cli(common + " --smooth") == 0);
  CHECK(slurp(svg).find("path") != std::string::npos);
  CHECK(run_cli(common + " --smooth --d-ad 0.25") == 2);
  CHECK(run_cli(common + " --smooth --d-ad 0") == 2);
}
