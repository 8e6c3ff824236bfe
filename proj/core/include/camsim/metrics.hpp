#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "camsim/engine.hpp"
#include "camsim/machine.hpp"

namespace camsim {

/// Completion time of the last record. Throws EmptyTrace.
SimTime makespan(const std::vector<TraceRecord>& trace);

struct Utilization {
  std::vector<double> per_cu;  // busy / makespan, in [0,1]
  double aggregate = 0.0;      // sum busy / (CUs * makespan)
};

Utilization utilization(const SimResult& result, const Machine& machine);

enum class RunConfigKind { Basic, Pipelined, Chiplets, Both };

const char* config_name(RunConfigKind c);
RunConfigKind config_from_string(const std::string& s);
inline bool config_pipeline(RunConfigKind c) {
  return c == RunConfigKind::Pipelined || c == RunConfigKind::Both;
}
inline bool config_chiplets(RunConfigKind c) {
  return c == RunConfigKind::Chiplets || c == RunConfigKind::Both;
}

/// Makespan table: rows keyed by tile count, columns by configuration.
struct ResultTable {
  std::vector<std::uint32_t> tiles;                            // ascending
  std::map<RunConfigKind, std::vector<SimTime>> columns;       // aligned with tiles

  bool has(RunConfigKind c) const { return columns.count(c) != 0; }
  SimTime at(RunConfigKind c, std::uint32_t t) const;
  bool operator==(const ResultTable& o) const { return tiles == o.tiles && columns == o.columns; }
};

/// basic/variant formatted by truncation to 3 significant digits
/// (1208/324 -> "3.72", not the rounded "3.73").
std::string format_speedup(SimTime basic, SimTime variant);

struct SpeedupTable {
  std::vector<std::uint32_t> tiles;
  std::map<RunConfigKind, std::vector<std::string>> columns;  // Pipelined/Chiplets/Both
};

/// Speedup factors of each variant column against Basic. Throws MissingBasic
/// when the Basic column is absent or contains a nonpositive cell.
SpeedupTable speedup_table(const ResultTable& table);

/// CSV with header "tiles,basic,pipelined,chiplets,both"; import is exact
/// (export then re-import round-trips the table).
std::string result_table_to_csv(const ResultTable& table);
ResultTable result_table_from_csv(const std::string& text);
ResultTable load_result_table(const std::string& path);
void save_result_table(const ResultTable& table, const std::string& path);

std::string speedup_table_to_csv(const SpeedupTable& table);

/// SVG trace view: one horizontal lane per CU, one rectangle per trace
/// record, colors keyed by codelet kind, time axis in time units.
void export_gantt(const SimResult& result, const Machine& machine, std::ostream& out);
void save_gantt(const SimResult& result, const Machine& machine, const std::string& path);

}  // namespace camsim
