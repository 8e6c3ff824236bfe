#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <ostream>

#include "camsim/metrics.hpp"

namespace camsim {

namespace {

// Stable kind -> color mapping; unlisted kinds draw from the fallback
// palette in sorted-kind order.
const std::map<std::string, std::string> kKindColors = {
    {"start", "#9e9e9e"}, {"end", "#616161"},  {"conv", "#4e79a7"},
    {"vmul", "#f28e2b"},  {"sum", "#59a14f"},  {"dot", "#e15759"},
};

const char* kFallback[] = {"#b07aa1", "#76b7b2", "#edc948", "#ff9da7", "#9c755f"};

std::map<std::string, std::string> color_map(const SimResult& result,
                                             const std::vector<std::string>& kinds) {
  (void)result;
  std::map<std::string, std::string> colors;
  std::size_t next = 0;
  for (const std::string& kind : kinds) {
    const auto it = kKindColors.find(kind);
    if (it != kKindColors.end())
      colors[kind] = it->second;
    else
      colors[kind] = kFallback[next++ % (sizeof(kFallback) / sizeof(kFallback[0]))];
  }
  return colors;
}

// 1-2-5 progression keeping at most ~10 labeled ticks
SimTime nice_tick(SimTime span) {
  SimTime tick = 1;
  while (span / tick > 10) {
    if (span / (tick * 2) <= 10) return tick * 2;
    if (span / (tick * 5) <= 10) return tick * 5;
    tick *= 10;
  }
  return tick;
}

}  // namespace

void export_gantt(const SimResult& result, const Machine& machine, std::ostream& out) {
  if (result.trace.empty()) throw Error(Errc::EmptyTrace, "gantt of an empty trace");

  // Colors key on kinds; the trace carries labels, so recover the kind by
  // stripping the numeric suffix ("conv3" -> "conv").
  auto kind_from_label = [](const std::string& label) {
    std::size_t end = label.size();
    while (end > 0 && std::isdigit(static_cast<unsigned char>(label[end - 1]))) --end;
    return label.substr(0, end);
  };
  std::vector<std::string> kinds;
  for (const TraceRecord& r : result.trace) kinds.push_back(kind_from_label(r.label));
  std::sort(kinds.begin(), kinds.end());
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
  const auto colors = color_map(result, kinds);

  const SimTime span = makespan(result.trace);
  const std::uint32_t lanes = machine.total_cus();
  const double plot_w = 960.0;
  const double lane_h = 18.0;
  const double margin_l = 60.0, margin_t = 20.0, margin_b = 40.0;
  const double xscale = plot_w / static_cast<double>(std::max<SimTime>(span, 1));
  const double height = margin_t + lanes * lane_h + margin_b;
  const double width = margin_l + plot_w + 20.0;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "  <style>text{font-family:sans-serif;font-size:10px;}</style>\n";

  for (std::uint32_t cu = 0; cu < lanes; ++cu) {
    const double y = margin_t + cu * lane_h;
    out << "  <text x=\"4\" y=\"" << y + lane_h * 0.7 << "\">cu" << cu << "</text>\n";
    out << "  <line x1=\"" << margin_l << "\" y1=\"" << y + lane_h << "\" x2=\""
        << margin_l + plot_w << "\" y2=\"" << y + lane_h
        << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
  }

  for (const TraceRecord& r : result.trace) {
    const double x = margin_l + static_cast<double>(r.start) * xscale;
    const double w =
        std::max(0.5, static_cast<double>(r.end - r.start) * xscale);
    const double y = margin_t + r.cu * lane_h + 1.0;
    const std::string kind = kind_from_label(r.label);
    out << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\""
        << lane_h - 2.0 << "\" fill=\"" << colors.at(kind) << "\">"
        << "<title>" << r.label << " [" << r.start << "," << r.end << ") cu" << r.cu
        << "</title></rect>\n";
  }

  // time axis in time units
  const double axis_y = margin_t + lanes * lane_h + 12.0;
  const SimTime tick = nice_tick(span);
  for (SimTime t = 0; t <= span; t += tick) {
    const double x = margin_l + static_cast<double>(t) * xscale;
    out << "  <line x1=\"" << x << "\" y1=\"" << margin_t << "\" x2=\"" << x << "\" y2=\""
        << axis_y - 10.0 << "\" stroke=\"#bbbbbb\" stroke-width=\"0.3\"/>\n";
    out << "  <text x=\"" << x << "\" y=\"" << axis_y << "\" text-anchor=\"middle\">" << t
        << "</text>\n";
  }
  out << "  <text x=\"" << margin_l + plot_w / 2 << "\" y=\"" << axis_y + 14.0
      << "\" text-anchor=\"middle\">time units</text>\n";
  out << "</svg>\n";
}

void save_gantt(const SimResult& result, const Machine& machine, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write '" + path + "'");
  export_gantt(result, machine, out);
  if (!out) throw Error(Errc::IoError, "write failed for '" + path + "'");
}

}  // namespace camsim
