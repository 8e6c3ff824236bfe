// camsim - discrete-event simulator for codelet graphs on chiplet machines.
//
// Subcommands:
//   gen        generate a GEMM benchmark graph file
//   run        simulate one graph on a machine, emit trace (and gantt)
//   sweep      run a (method x tiles x config) grid, emit result/speedup CSVs
//   calibrate  fit delay constants to a target result table
//
// Exit codes: 0 success, 1 validation/config error, 2 deadlock, 3 I/O error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "camsim/calibrate.hpp"
#include "camsim/engine.hpp"
#include "camsim/experiments.hpp"
#include "camsim/gemm.hpp"
#include "camsim/graph_io.hpp"
#include "camsim/metrics.hpp"

namespace {

using namespace camsim;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::IoError: return 3;
    case Errc::Deadlock: return 2;
    default: return 1;
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(Errc::IoError, "write failed for '" + path + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct GenArgs {
  std::string method = "outer";
  std::uint32_t tiles = 8;
  bool pipeline = false;
  bool chiplets = false;
  std::string profile = "paper-calibrated";
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  GemmParams params;
  params.method = method_from_string(a.method);
  params.tiles = a.tiles;
  params.pipeline = a.pipeline;
  params.chiplets = a.chiplets;
  params.profile = resolve_profile(
      a.profile, params.method == GemmMethod::Outer ? GraphFamily::Outer : GraphFamily::Inner);

  const CodeletGraph g = generate_gemm(params);
  const ValidationReport report = validate_graph(g);
  if (!report.ok) {
    for (const auto& v : report.violations)
      std::cerr << "invalid graph: " << errc_name(v.code) << " " << v.detail << "\n";
    return 1;
  }
  const std::string path = a.out.empty() ? g.name + ".json" : a.out;
  save_graph(g, path);
  std::cout << "wrote " << path << " (" << g.codelets.size() << " codelets, " << g.edges.size()
            << " edges)\n";
  return 0;
}

struct RunArgs {
  std::string graph;
  std::string machine;
  std::uint32_t cus = 64;
  bool pipeline = false;
  bool chiplets = false;
  std::string profile = "paper-calibrated";
  std::string trace;
  std::string gantt;
};

int cmd_run(const RunArgs& a) {
  const CodeletGraph g = load_graph(a.graph);
  const ValidationReport report = validate_graph(g);
  if (!report.ok) {
    for (const auto& v : report.violations)
      std::cerr << "invalid graph: " << errc_name(v.code) << " " << v.detail << "\n";
    return 1;
  }

  Machine machine;
  if (!a.machine.empty())
    machine = load_machine(a.machine);
  else
    machine = a.chiplets ? chiplet_machine(a.cus) : conventional_machine(a.cus);

  SimConfig cfg;
  cfg.pipelining = a.pipeline;
  cfg.chiplets = a.chiplets || (a.machine.empty() ? false : machine.chiplets_enabled);
  if (a.profile != "paper-calibrated") {
    // multipliers come from the profile; family does not matter for a run
    try {
      cfg.multipliers = resolve_profile(a.profile, GraphFamily::Outer).multipliers;
    } catch (const Error& e) {
      if (e.code() != Errc::FamilyMismatch) throw;
      cfg.multipliers = resolve_profile(a.profile, GraphFamily::Inner).multipliers;
    }
  }

  const SimResult result = run(g, machine, cfg);
  if (a.trace.empty())
    std::cout << trace_to_json_text(result);
  else
    save_trace(result, a.trace);
  if (!a.gantt.empty()) save_gantt(result, machine, a.gantt);

  const Utilization u = utilization(result, machine);
  std::cerr << "makespan: " << result.makespan << " time units, aggregate utilization "
            << u.aggregate << "\n";
  return 0;
}

struct SweepArgs {
  std::string methods = "outer,inner";
  std::string tiles = "8,16,32,64";
  std::string configs = "basic,pipelined,chiplets,both";
  std::uint32_t cus = 64;
  std::string profile = "paper-calibrated";
  std::string out = "results.csv";
  std::string speedup_out = "speedup.csv";
};

int cmd_sweep(const SweepArgs& a) {
  ExperimentSpec spec;
  spec.methods.clear();
  for (const auto& m : split_list(a.methods)) spec.methods.push_back(method_from_string(m));
  spec.tiles.clear();
  for (const auto& t : split_list(a.tiles)) spec.tiles.push_back(std::stoul(t));
  spec.configs.clear();
  for (const auto& c : split_list(a.configs)) spec.configs.push_back(config_from_string(c));
  spec.total_cus = a.cus;
  spec.profile_ref = a.profile;

  const SweepOutput out = sweep(spec);
  write_text(a.out, sweep_results_csv(out));
  bool have_basic = true;
  for (const auto& [method, table] : out.tables)
    if (!table.has(RunConfigKind::Basic)) have_basic = false;
  if (have_basic && spec.configs.size() > 1) {
    write_text(a.speedup_out, sweep_speedup_csv(out));
    std::cout << "wrote " << a.out << " and " << a.speedup_out << "\n";
  } else {
    std::cout << "wrote " << a.out << " (no speedup table without a basic column)\n";
  }
  return 0;
}

struct CalibrateArgs {
  std::string target;
  std::string family = "outer";
  std::string out = "profile.json";
  std::string residuals;
  std::uint32_t max_start = 16;
  std::uint32_t max_end = 16;
  std::int64_t max_coeff = 64;
  std::uint32_t cus = 64;
};

int cmd_calibrate(const CalibrateArgs& a) {
  const ResultTable target = load_result_table(a.target);
  SearchBounds bounds;
  bounds.start_max = a.max_start;
  bounds.end_max = a.max_end;
  bounds.numerator_max = a.max_coeff;
  bounds.assumed_cus = a.cus;

  const CalibrationResult result =
      calibrate(target, family_from_string(a.family), bounds);
  save_profile(result.profile, a.out);

  std::ostringstream res;
  res << "config,tiles,target,residual\n";
  for (const auto& [cfg, col] : result.residuals) {
    for (std::size_t i = 0; i < result.tiles.size(); ++i) {
      res << config_name(cfg) << ',' << result.tiles[i] << ','
          << target.columns.at(cfg)[i] << ',' << col[i] << '\n';
    }
  }
  if (!a.residuals.empty()) write_text(a.residuals, res.str());

  std::cout << "wrote " << a.out << (result.exact ? " (exact basic fit)" : " (least-squares fit)")
            << "\n";
  if (a.residuals.empty())
    std::cout << res.str();
  else
    std::cout << "wrote " << a.residuals << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"codelet abstract machine simulator"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a GEMM benchmark graph");
  gen->add_option("--method", gen_args.method, "outer | inner")->capture_default_str();
  gen->add_option("--tiles", gen_args.tiles, "tile count, power of two >= 2")
      ->capture_default_str();
  gen->add_flag("--pipeline", gen_args.pipeline, "mark codelets pipeline-enabled");
  gen->add_flag("--chiplets", gen_args.chiplets, "assign chiplet resource classes");
  gen->add_option("--profile", gen_args.profile, "profile name or path")->capture_default_str();
  gen->add_option("-o,--out", gen_args.out, "output graph file (default <name>.json)");

  RunArgs run_args;
  auto* runc = app.add_subcommand("run", "simulate a graph");
  runc->add_option("--graph", run_args.graph, "graph file")->required();
  runc->add_option("--machine", run_args.machine, "machine file (overrides --cus)");
  runc->add_option("--cus", run_args.cus, "CU count for the implied machine")
      ->capture_default_str();
  runc->add_flag("--pipeline", run_args.pipeline, "enable pipelined early-enabling");
  runc->add_flag("--chiplets", run_args.chiplets, "enable chiplet class matching and speedups");
  runc->add_option("--profile", run_args.profile, "profile for speedup multipliers")
      ->capture_default_str();
  runc->add_option("--trace", run_args.trace, "trace output file (default stdout)");
  runc->add_option("--gantt", run_args.gantt, "SVG gantt output file");

  SweepArgs sweep_args;
  auto* sweepc = app.add_subcommand("sweep", "run a configuration grid");
  sweepc->add_option("--methods", sweep_args.methods, "comma list of methods")
      ->capture_default_str();
  sweepc->add_option("--tiles", sweep_args.tiles, "comma list of tile counts")
      ->capture_default_str();
  sweepc->add_option("--configs", sweep_args.configs, "comma list of configurations")
      ->capture_default_str();
  sweepc->add_option("--cus", sweep_args.cus, "total CU count")->capture_default_str();
  sweepc->add_option("--profile", sweep_args.profile, "profile name or path")
      ->capture_default_str();
  sweepc->add_option("--out", sweep_args.out, "results CSV path")->capture_default_str();
  sweepc->add_option("--speedup-out", sweep_args.speedup_out, "speedup CSV path")
      ->capture_default_str();

  CalibrateArgs cal_args;
  auto* cal = app.add_subcommand("calibrate", "fit delay constants to a result table");
  cal->add_option("--target", cal_args.target, "target result table CSV")->required();
  cal->add_option("--family", cal_args.family, "outer | inner")->capture_default_str();
  cal->add_option("--out", cal_args.out, "profile output path")->capture_default_str();
  cal->add_option("--residuals", cal_args.residuals, "residual report CSV path");
  cal->add_option("--max-start", cal_args.max_start, "start cost bound")->capture_default_str();
  cal->add_option("--max-end", cal_args.max_end, "end cost bound")->capture_default_str();
  cal->add_option("--max-coeff", cal_args.max_coeff, "coefficient numerator bound")
      ->capture_default_str();
  cal->add_option("--cus", cal_args.cus, "CU count the targets assume")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_args);
    if (runc->parsed()) return cmd_run(run_args);
    if (sweepc->parsed()) return cmd_sweep(sweep_args);
    if (cal->parsed()) return cmd_calibrate(cal_args);
  } catch (const camsim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
