#include "camsim/experiments.hpp"

#include <sstream>

namespace camsim {

const ResultTable& SweepOutput::table(GemmMethod m) const {
  for (const auto& [method, table] : tables)
    if (method == m) return table;
  throw Error(Errc::ParseError, std::string("sweep has no table for method ") + method_name(m));
}

SimResult run_cell(GemmMethod method, std::uint32_t tiles, RunConfigKind config,
                   std::uint32_t total_cus, const DelayProfile& profile) {
  GemmParams params;
  params.method = method;
  params.tiles = tiles;
  params.pipeline = config_pipeline(config);
  params.chiplets = config_chiplets(config);
  params.profile = profile;
  const CodeletGraph graph = generate_gemm(params);

  const Machine machine =
      params.chiplets ? chiplet_machine(total_cus) : conventional_machine(total_cus);

  SimConfig cfg;
  cfg.pipelining = params.pipeline;
  cfg.chiplets = params.chiplets;
  cfg.multipliers = profile.multipliers;
  return run(graph, machine, cfg);
}

SweepOutput sweep(const ExperimentSpec& spec) {
  if (spec.methods.empty() || spec.tiles.empty() || spec.configs.empty())
    throw Error(Errc::ParseError, "sweep needs nonempty methods, tiles and configs");

  SweepOutput out;
  for (GemmMethod method : spec.methods) {
    const GraphFamily family =
        method == GemmMethod::Outer ? GraphFamily::Outer : GraphFamily::Inner;
    const DelayProfile profile = resolve_profile(spec.profile_ref, family);

    ResultTable table;
    table.tiles = spec.tiles;
    for (RunConfigKind config : spec.configs) {
      std::vector<SimTime> column;
      column.reserve(spec.tiles.size());
      for (std::uint32_t tiles : spec.tiles)
        column.push_back(run_cell(method, tiles, config, spec.total_cus, profile).makespan);
      table.columns[config] = std::move(column);
    }
    out.tables.emplace_back(method, std::move(table));
  }
  return out;
}

namespace {

constexpr RunConfigKind kAllConfigs[] = {RunConfigKind::Basic, RunConfigKind::Pipelined,
                                         RunConfigKind::Chiplets, RunConfigKind::Both};

}  // namespace

std::string sweep_results_csv(const SweepOutput& out) {
  if (out.tables.empty()) throw Error(Errc::ParseError, "empty sweep");
  if (out.tables.size() == 1) return result_table_to_csv(out.tables.front().second);

  std::ostringstream csv;
  csv << "tiles";
  for (const auto& [method, table] : out.tables) {
    for (RunConfigKind c : kAllConfigs)
      if (table.has(c)) csv << ',' << method_name(method) << '_' << config_name(c);
  }
  csv << '\n';
  const auto& tiles = out.tables.front().second.tiles;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    csv << tiles[i];
    for (const auto& [method, table] : out.tables) {
      (void)method;
      for (RunConfigKind c : kAllConfigs)
        if (table.has(c)) csv << ',' << table.columns.at(c)[i];
    }
    csv << '\n';
  }
  return csv.str();
}

std::string sweep_speedup_csv(const SweepOutput& out) {
  if (out.tables.empty()) throw Error(Errc::ParseError, "empty sweep");
  if (out.tables.size() == 1)
    return speedup_table_to_csv(speedup_table(out.tables.front().second));

  constexpr RunConfigKind kVariants[] = {RunConfigKind::Pipelined, RunConfigKind::Chiplets,
                                         RunConfigKind::Both};
  std::vector<std::pair<GemmMethod, SpeedupTable>> tables;
  for (const auto& [method, table] : out.tables)
    tables.emplace_back(method, speedup_table(table));

  std::ostringstream csv;
  csv << "tiles";
  for (const auto& [method, table] : tables) {
    for (RunConfigKind c : kVariants)
      if (table.columns.count(c)) csv << ',' << method_name(method) << '_' << config_name(c);
  }
  csv << '\n';
  const auto& tiles = tables.front().second.tiles;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    csv << tiles[i];
    for (const auto& [method, table] : tables) {
      (void)method;
      for (RunConfigKind c : kVariants)
        if (table.columns.count(c)) csv << ',' << table.columns.at(c)[i];
    }
    csv << '\n';
  }
  return csv.str();
}

}  // namespace camsim
