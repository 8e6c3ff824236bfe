#include "camsim/graph_io.hpp"

#include "json_util.hpp"

namespace camsim {

using detail::json;

CodeletGraph graph_from_json_text(const std::string& text) {
  const json j = detail::parse_text(text, "graph");
  detail::require_keys(j, {"name", "tiles", "codelets", "edges", "tps"},
                       {"name", "codelets", "edges", "tps"}, "graph");

  CodeletGraph g;
  if (!j.at("name").is_string()) throw Error(Errc::ParseError, "graph: name must be a string");
  g.name = j.at("name").get<std::string>();

  if (j.contains("tiles") && !j.at("tiles").is_null())
    g.tiles = detail::get_uint<std::uint32_t>(j.at("tiles"), "graph tiles");

  const json& codelets = j.at("codelets");
  if (!codelets.is_array()) throw Error(Errc::ParseError, "graph: codelets must be an array");
  g.codelets.reserve(codelets.size());
  for (std::size_t i = 0; i < codelets.size(); ++i) {
    const json& jc = codelets[i];
    detail::require_keys(jc, {"id", "label", "kind", "cost", "class", "pipeline", "tp"},
                         {"id", "label", "kind", "cost", "class", "pipeline", "tp"},
                         "codelet " + std::to_string(i));
    Codelet c;
    c.id = detail::get_uint<CodeletId>(jc.at("id"), "codelet id");
    if (c.id != i)
      throw Error(Errc::ParseError, "codelet ids must be dense from 0 (index " +
                                        std::to_string(i) + " has id " + std::to_string(c.id) + ")");
    c.label = jc.at("label").get<std::string>();
    c.kind = jc.at("kind").get<std::string>();
    c.base_cost = detail::get_uint<SimTime>(jc.at("cost"), "codelet cost");
    c.resource_class = ResourceClass::from_string(jc.at("class").get<std::string>());
    if (!jc.at("pipeline").is_boolean())
      throw Error(Errc::ParseError, "codelet pipeline must be a boolean");
    c.pipeline_enabled = jc.at("pipeline").get<bool>();
    c.tp = detail::get_uint<TpId>(jc.at("tp"), "codelet tp");
    g.codelets.push_back(std::move(c));
  }

  const json& edges = j.at("edges");
  if (!edges.is_array()) throw Error(Errc::ParseError, "graph: edges must be an array");
  for (const json& je : edges) {
    if (!je.is_array() || je.size() != 2)
      throw Error(Errc::ParseError, "graph: each edge must be a [producer, consumer] pair");
    Edge e;
    e.producer = detail::get_uint<CodeletId>(je[0], "edge producer");
    e.consumer = detail::get_uint<CodeletId>(je[1], "edge consumer");
    g.edges.push_back(e);
  }

  const json& tps = j.at("tps");
  if (!tps.is_array()) throw Error(Errc::ParseError, "graph: tps must be an array");
  for (const json& jt : tps) {
    detail::require_keys(jt, {"id", "cluster"}, {"id", "cluster"}, "tp");
    ThreadedProcedure tp;
    tp.id = detail::get_uint<TpId>(jt.at("id"), "tp id");
    tp.cluster = detail::get_uint<ClusterId>(jt.at("cluster"), "tp cluster");
    g.tps.push_back(std::move(tp));
  }

  g.rebuild_adjacency();
  g.reset_slots_to_indegree();
  return g;
}

std::string graph_to_json_text(const CodeletGraph& g) {
  json j;
  j["name"] = g.name;
  j["tiles"] = g.tiles ? json(*g.tiles) : json(nullptr);
  json codelets = json::array();
  for (const Codelet& c : g.codelets) {
    codelets.push_back({{"id", c.id},
                        {"label", c.label},
                        {"kind", c.kind},
                        {"cost", c.base_cost},
                        {"class", c.resource_class.name},
                        {"pipeline", c.pipeline_enabled},
                        {"tp", c.tp}});
  }
  j["codelets"] = std::move(codelets);
  json edges = json::array();
  for (const Edge& e : g.edges) edges.push_back({e.producer, e.consumer});
  j["edges"] = std::move(edges);
  json tps = json::array();
  for (const auto& tp : g.tps) tps.push_back({{"id", tp.id}, {"cluster", tp.cluster}});
  j["tps"] = std::move(tps);
  return j.dump(2) + "\n";
}

CodeletGraph load_graph(const std::string& path) {
  return graph_from_json_text(detail::read_file(path));
}

void save_graph(const CodeletGraph& g, const std::string& path) {
  detail::write_file(path, graph_to_json_text(g));
}

}  // namespace camsim
