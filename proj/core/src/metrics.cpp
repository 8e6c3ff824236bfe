#include "camsim/metrics.hpp"

#include <algorithm>
#include <sstream>

#include "json_util.hpp"

namespace camsim {

SimTime makespan(const std::vector<TraceRecord>& trace) {
  if (trace.empty()) throw Error(Errc::EmptyTrace, "makespan of an empty trace");
  SimTime m = 0;
  for (const TraceRecord& r : trace) m = std::max(m, r.end);
  return m;
}

Utilization utilization(const SimResult& result, const Machine& machine) {
  if (result.trace.empty()) throw Error(Errc::EmptyTrace, "utilization of an empty trace");
  const SimTime span = makespan(result.trace);
  if (span == 0) throw Error(Errc::EmptyTrace, "utilization of a zero-length trace");
  Utilization u;
  u.per_cu.resize(machine.total_cus(), 0.0);
  SimTime total_busy = 0;
  for (std::uint32_t cu = 0; cu < machine.total_cus(); ++cu) {
    const SimTime busy = cu < result.cu_busy.size() ? result.cu_busy[cu] : 0;
    total_busy += busy;
    u.per_cu[cu] = static_cast<double>(busy) / static_cast<double>(span);
  }
  u.aggregate = static_cast<double>(total_busy) /
                (static_cast<double>(machine.total_cus()) * static_cast<double>(span));
  return u;
}

const char* config_name(RunConfigKind c) {
  switch (c) {
    case RunConfigKind::Basic: return "basic";
    case RunConfigKind::Pipelined: return "pipelined";
    case RunConfigKind::Chiplets: return "chiplets";
    case RunConfigKind::Both: return "both";
  }
  return "?";
}

RunConfigKind config_from_string(const std::string& s) {
  if (s == "basic") return RunConfigKind::Basic;
  if (s == "pipelined") return RunConfigKind::Pipelined;
  if (s == "chiplets") return RunConfigKind::Chiplets;
  if (s == "both") return RunConfigKind::Both;
  throw Error(Errc::ParseError, "unknown configuration '" + s + "'");
}

SimTime ResultTable::at(RunConfigKind c, std::uint32_t t) const {
  const auto col = columns.find(c);
  if (col == columns.end())
    throw Error(Errc::ParseError, std::string("table has no column ") + config_name(c));
  for (std::size_t i = 0; i < tiles.size(); ++i)
    if (tiles[i] == t) return col->second[i];
  throw Error(Errc::ParseError, "table has no row for tiles=" + std::to_string(t));
}

std::string format_speedup(SimTime basic, SimTime variant) {
  if (basic == 0 || variant == 0)
    throw Error(Errc::MissingBasic, "speedup needs positive makespans");
  const __int128 p = basic;
  const __int128 q = variant;

  // scale p/q into [100, 1000) and truncate: k decimal digits after the point
  int k = 0;
  __int128 scaled_p = p;
  __int128 scaled_q = q;
  while (scaled_p / scaled_q < 100) {
    scaled_p *= 10;
    ++k;
  }
  while (scaled_p / scaled_q >= 1000) {
    scaled_q *= 10;
    --k;
  }
  const auto digits = static_cast<long long>(scaled_p / scaled_q);  // in [100, 999]
  std::string d = std::to_string(digits);

  if (k <= 0) return d + std::string(static_cast<std::size_t>(-k), '0');
  if (k < 3) return d.insert(d.size() - static_cast<std::size_t>(k), ".");
  return "0." + std::string(static_cast<std::size_t>(k - 3), '0') + d;
}

SpeedupTable speedup_table(const ResultTable& table) {
  const auto basic = table.columns.find(RunConfigKind::Basic);
  if (basic == table.columns.end())
    throw Error(Errc::MissingBasic, "speedup table needs a basic column");
  for (SimTime v : basic->second)
    if (v == 0) throw Error(Errc::MissingBasic, "basic column contains a zero makespan");

  SpeedupTable out;
  out.tiles = table.tiles;
  for (const auto& [cfg, col] : table.columns) {
    if (cfg == RunConfigKind::Basic) continue;
    std::vector<std::string> cells;
    cells.reserve(col.size());
    for (std::size_t i = 0; i < col.size(); ++i)
      cells.push_back(format_speedup(basic->second[i], col[i]));
    out.columns[cfg] = std::move(cells);
  }
  return out;
}

namespace {

constexpr RunConfigKind kAllConfigs[] = {RunConfigKind::Basic, RunConfigKind::Pipelined,
                                         RunConfigKind::Chiplets, RunConfigKind::Both};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string result_table_to_csv(const ResultTable& table) {
  for (RunConfigKind c : kAllConfigs)
    if (!table.has(c))
      throw Error(Errc::ParseError,
                  std::string("cannot export incomplete table, missing ") + config_name(c));
  std::ostringstream out;
  out << "tiles,basic,pipelined,chiplets,both\n";
  for (std::size_t i = 0; i < table.tiles.size(); ++i) {
    out << table.tiles[i];
    for (RunConfigKind c : kAllConfigs) out << ',' << table.columns.at(c)[i];
    out << '\n';
  }
  return out.str();
}

ResultTable result_table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::ParseError, "empty result table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "tiles,basic,pipelined,chiplets,both")
    throw Error(Errc::ParseError, "bad result table header '" + line + "'");

  ResultTable table;
  for (RunConfigKind c : kAllConfigs) table.columns[c] = {};
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 5)
      throw Error(Errc::ParseError, "result table row needs 5 cells: '" + line + "'");
    try {
      table.tiles.push_back(static_cast<std::uint32_t>(std::stoul(cells[0])));
      for (std::size_t i = 0; i < 4; ++i)
        table.columns[kAllConfigs[i]].push_back(std::stoull(cells[i + 1]));
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad result table cell in '" + line + "'");
    }
  }
  return table;
}

ResultTable load_result_table(const std::string& path) {
  return result_table_from_csv(detail::read_file(path));
}

void save_result_table(const ResultTable& table, const std::string& path) {
  detail::write_file(path, result_table_to_csv(table));
}

std::string speedup_table_to_csv(const SpeedupTable& table) {
  std::ostringstream out;
  out << "tiles,pipelined,chiplets,both\n";
  for (std::size_t i = 0; i < table.tiles.size(); ++i) {
    out << table.tiles[i];
    for (RunConfigKind c :
         {RunConfigKind::Pipelined, RunConfigKind::Chiplets, RunConfigKind::Both}) {
      out << ',';
      const auto col = table.columns.find(c);
      if (col != table.columns.end()) out << col->second[i];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace camsim
