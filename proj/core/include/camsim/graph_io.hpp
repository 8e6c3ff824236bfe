#pragma once

#include <string>

#include "camsim/graph.hpp"

namespace camsim {

/// Graph file format (UTF-8 JSON):
///   {"name": str, "tiles": int|null,
///    "codelets": [{"id", "label", "kind", "cost", "class", "pipeline", "tp"}],
///    "edges": [[producer, consumer], ...],
///    "tps": [{"id": int, "cluster": int}]}
/// Unknown fields are rejected and codelet ids must be dense from 0.
/// Slot reset counts are derived from in-degrees on load.
CodeletGraph graph_from_json_text(const std::string& text);
std::string graph_to_json_text(const CodeletGraph& g);

CodeletGraph load_graph(const std::string& path);
void save_graph(const CodeletGraph& g, const std::string& path);

}  // namespace camsim
