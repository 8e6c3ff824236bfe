#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"

#include "camsim/delay_model.hpp"
#include "camsim/engine.hpp"
#include "camsim/gemm.hpp"
#include "camsim/graph_io.hpp"
#include "camsim/machine.hpp"
#include "test_support.hpp"

using namespace camsim;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("camsim-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("graph files round-trip") {
  GemmParams p;
  p.method = GemmMethod::Outer;
  p.tiles = 8;
  p.pipeline = true;
  p.chiplets = true;
  p.profile = paper_calibrated(GraphFamily::Outer);
  const CodeletGraph g = gen_outer(p);

  const std::string text = graph_to_json_text(g);
  const CodeletGraph back = graph_from_json_text(text);
  CHECK(graph_to_json_text(back) == text);
  CHECK(back.tiles == g.tiles);
  CHECK(back.codelets.size() == g.codelets.size());
  CHECK(validate_graph(back).ok);
  // slot resets are rebuilt from in-degrees on load
  for (CodeletId i = 0; i < g.size(); ++i)
    CHECK(back.codelets[i].slot.reset_count == g.codelets[i].slot.reset_count);
}

TEST_CASE("graph loader rejects unknown fields and sparse ids") {
  const char* unknown = R"({"name":"g","tiles":null,"codelets":[],"edges":[],"tps":[],"extra":1})";
  CHECK_ERRC(graph_from_json_text(unknown), Errc::ParseError);

  const char* unknown_codelet_field = R"({"name":"g","tiles":null,
    "codelets":[{"id":0,"label":"a","kind":"user","cost":1,"class":"conventional",
                 "pipeline":false,"tp":0,"color":"red"}],
    "edges":[],"tps":[{"id":0,"cluster":0}]})";
  CHECK_ERRC(graph_from_json_text(unknown_codelet_field), Errc::ParseError);

  const char* sparse = R"({"name":"g","tiles":null,
    "codelets":[{"id":1,"label":"a","kind":"user","cost":1,"class":"conventional",
                 "pipeline":false,"tp":0}],
    "edges":[],"tps":[{"id":0,"cluster":0}]})";
  CHECK_ERRC(graph_from_json_text(sparse), Errc::ParseError);

  CHECK_ERRC(graph_from_json_text("not json"), Errc::ParseError);
}

TEST_CASE("machine files round-trip and build") {
  MachineSpec spec;
  spec.clusters.push_back({0,
                           {{ResourceClass::conventional(), 1},
                            {ResourceClass::chiplet("tpu-like"), 32},
                            {ResourceClass::chiplet("udp-like"), 31}}});
  spec.chiplets_enabled = true;

  const std::string text = machine_spec_to_json_text(spec);
  const MachineSpec back = machine_spec_from_json_text(text);
  const Machine m = build_machine(back);
  CHECK(m.total_cus() == 64);
  CHECK(m.chiplets_enabled);
  CHECK(m.class_counts.at("udp-like") == 31);

  CHECK_ERRC(machine_spec_from_json_text(R"({"clusters":[]})"), Errc::ParseError);
}

TEST_CASE("profile files round-trip with rational coefficients") {
  const DelayProfile p = paper_calibrated(GraphFamily::Inner);
  const std::string text = profile_to_json_text(p);
  const DelayProfile back = profile_from_json_text(text);
  CHECK(back == p);

  // rationals appear as "n/d" strings
  CHECK(text.find("\"15/64\"") != std::string::npos);
  CHECK(text.find("\"-1\"") != std::string::npos);

  const char* bad_mult = R"({"family":"outer","start":0,"end":0,"kinds":{},
                             "multipliers":{"tpu-like":"1/2"}})";
  CHECK_ERRC(profile_from_json_text(bad_mult), Errc::ParseError);
}

TEST_CASE("missing files raise I/O errors") {
  CHECK_ERRC(load_graph("/nonexistent/path/graph.json"), Errc::IoError);
  CHECK_ERRC(load_machine("/nonexistent/path/machine.json"), Errc::IoError);
  CHECK_ERRC(load_profile("/nonexistent/path/profile.json"), Errc::IoError);
}

TEST_CASE("profile resolution honors CAMSIM_PROFILE_DIR") {
  TempDir dir;
  const DelayProfile p = paper_calibrated(GraphFamily::Outer);
  save_profile(p, dir.file("custom.json"));

  ::setenv("CAMSIM_PROFILE_DIR", dir.path.string().c_str(), 1);
  const DelayProfile by_name = resolve_profile("custom.json", GraphFamily::Outer);
  CHECK(by_name == p);
  const DelayProfile by_stem = resolve_profile("custom", GraphFamily::Outer);
  CHECK(by_stem == p);
  CHECK_ERRC(resolve_profile("custom", GraphFamily::Inner), Errc::FamilyMismatch);
  ::unsetenv("CAMSIM_PROFILE_DIR");

  CHECK(resolve_profile("paper-calibrated", GraphFamily::Inner).family == GraphFamily::Inner);
}

TEST_CASE("traces serialize sorted by start then codelet id") {
  const auto g = camsim::test::make_graph({2, 2, 2}, {});
  const SimResult r = run(g, conventional_machine(3), SimConfig{});
  const std::string text = trace_to_json_text(r);
  // all three start at 0; ids ascend in the serialization
  const auto p0 = text.find("\"codelet\": 0");
  const auto p1 = text.find("\"codelet\": 1");
  const auto p2 = text.find("\"codelet\": 2");
  REQUIRE(p0 != std::string::npos);
  CHECK(p0 < p1);
  CHECK(p1 < p2);
}
