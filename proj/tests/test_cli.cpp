#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "camsim/graph_io.hpp"
#include "camsim/metrics.hpp"

using namespace camsim;

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
  const char* p = std::getenv("CAMSIM_CLI");
  REQUIRE_MESSAGE(p != nullptr, "CAMSIM_CLI must point at the camsim binary");
  return p;
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("camsim-cli-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("gen writes a 13-node outer graph at 4 tiles") {
  TempDir dir;
  const std::string out = dir.file("g.json");
  CHECK(run_cli("gen --method outer --tiles 4 -o " + out) == 0);
  const CodeletGraph g = load_graph(out);
  CHECK(g.codelets.size() == 13);
  CHECK(g.edges.size() == 15);
}

TEST_CASE("run reports a missing machine file as an I/O error") {
  TempDir dir;
  const std::string graph = dir.file("g.json");
  REQUIRE(run_cli("gen --method outer --tiles 4 -o " + graph) == 0);
  CHECK(run_cli("run --graph " + graph + " --machine " + dir.file("missing.json")) == 3);
}

TEST_CASE("run emits a trace and a gantt") {
  TempDir dir;
  const std::string graph = dir.file("g.json");
  REQUIRE(run_cli("gen --method outer --tiles 4 -o " + graph) == 0);
  const std::string trace = dir.file("trace.json");
  const std::string gantt = dir.file("trace.svg");
  CHECK(run_cli("run --graph " + graph + " --cus 4 --trace " + trace + " --gantt " + gantt) == 0);
  CHECK(slurp(trace).find("\"codelet\"") != std::string::npos);
  CHECK(slurp(gantt).rfind("<svg", 0) == 0);
}

TEST_CASE("bad flags exit with the validation code") {
  CHECK(run_cli("gen --method sideways --tiles 4") == 1);
  CHECK(run_cli("gen --method outer --tiles 3") == 1);
  CHECK(run_cli("frobnicate") == 1);
}

TEST_CASE("sweep reproduces the outer basic column") {
  TempDir dir;
  const std::string out = dir.file("results.csv");
  const std::string speedup = dir.file("speedup.csv");
  CHECK(run_cli("sweep --methods outer,inner --tiles 8,16,32,64 "
                "--configs basic,pipelined,chiplets,both --cus 64 "
                "--profile paper-calibrated --out " +
                out + " --speedup-out " + speedup) == 0);

  std::istringstream csv(slurp(out));
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "tiles,outer_basic,outer_pipelined,outer_chiplets,outer_both,"
        "inner_basic,inner_pipelined,inner_chiplets,inner_both");
  std::vector<std::string> first_cells;
  std::string line;
  std::vector<long long> outer_basic;
  while (std::getline(csv, line)) {
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');  // tiles
    std::getline(row, cell, ',');  // outer_basic
    outer_basic.push_back(std::stoll(cell));
  }
  CHECK(outer_basic == std::vector<long long>{1208, 5609, 26570, 124811});
  CHECK(slurp(speedup).rfind("tiles,outer_pipelined", 0) == 0);
}

TEST_CASE("an individually invoked run matches the sweep cell") {
  TempDir dir;
  const std::string graph = dir.file("g.json");
  REQUIRE(run_cli("gen --method outer --tiles 8 --pipeline --chiplets -o " + graph) == 0);
  const std::string trace = dir.file("t.json");
  REQUIRE(run_cli("run --graph " + graph + " --cus 64 --pipeline --chiplets --trace " + trace) ==
          0);

  const std::string out = dir.file("r.csv");
  REQUIRE(run_cli("sweep --methods outer --tiles 8 --configs basic,pipelined,chiplets,both "
                  "--cus 64 --out " +
                  out + " --speedup-out " + dir.file("s.csv")) == 0);
  std::istringstream csv(slurp(out));
  std::string header, row;
  std::getline(csv, header);
  REQUIRE(header == "tiles,basic,pipelined,chiplets,both");
  std::getline(csv, row);
  const std::string both_cell = row.substr(row.rfind(',') + 1);

  // makespan of the standalone run = max end over its trace records
  const std::string text = slurp(trace);
  long long makespan = 0;
  for (std::size_t pos = text.find("\"end\":"); pos != std::string::npos;
       pos = text.find("\"end\":", pos + 1))
    makespan = std::max(makespan, std::stoll(text.substr(pos + 6)));
  CHECK(std::to_string(makespan) == both_cell);
}

TEST_CASE("calibrate fits the reference table and writes a profile") {
  TempDir dir;
  const char* data_dir = std::getenv("CAMSIM_DATA");
  REQUIRE_MESSAGE(data_dir != nullptr, "CAMSIM_DATA must point at the data directory");
  const std::string target = std::string(data_dir) + "/reference_outer.csv";
  const std::string profile = dir.file("profile.json");
  const std::string residuals = dir.file("residuals.csv");
  CHECK(run_cli("calibrate --target " + target + " --family outer --out " + profile +
                " --residuals " + residuals) == 0);
  CHECK(slurp(profile).find("\"family\": \"outer\"") != std::string::npos);
  const std::string res = slurp(residuals);
  CHECK(res.rfind("config,tiles,target,residual", 0) == 0);
  CHECK(res.find("basic,8,1208,0") != std::string::npos);
}
