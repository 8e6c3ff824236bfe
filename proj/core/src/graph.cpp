#include "camsim/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "camsim/errors.hpp"

namespace camsim {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::SlotMismatch: return "SlotMismatch";
    case Errc::DanglingEdge: return "DanglingEdge";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::IdMismatch: return "IdMismatch";
    case Errc::OrphanCodelet: return "OrphanCodelet";
    case Errc::DuplicateTp: return "DuplicateTp";
    case Errc::DoubleSignal: return "DoubleSignal";
    case Errc::UnderflowSignal: return "UnderflowSignal";
    case Errc::InvalidReset: return "InvalidReset";
    case Errc::EmptyCluster: return "EmptyCluster";
    case Errc::CountMismatch: return "CountMismatch";
    case Errc::UnknownCluster: return "UnknownCluster";
    case Errc::TooFewCUs: return "TooFewCUs";
    case Errc::NegativeCost: return "NegativeCost";
    case Errc::UnknownClass: return "UnknownClass";
    case Errc::UnknownKind: return "UnknownKind";
    case Errc::FamilyMismatch: return "FamilyMismatch";
    case Errc::NoFit: return "NoFit";
    case Errc::BadTiles: return "BadTiles";
    case Errc::Deadlock: return "Deadlock";
    case Errc::ClassUnavailable: return "ClassUnavailable";
    case Errc::UnknownPolicy: return "UnknownPolicy";
    case Errc::EmptyTrace: return "EmptyTrace";
    case Errc::MissingBasic: return "MissingBasic";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Error";
}

const char* state_name(CodeletState s) {
  switch (s) {
    case CodeletState::Dormant: return "dormant";
    case CodeletState::Enabled: return "enabled";
    case CodeletState::Ready: return "ready";
    case CodeletState::Active: return "active";
    case CodeletState::Done: return "done";
  }
  return "?";
}

void CodeletGraph::rebuild_adjacency() {
  const std::size_t n = codelets.size();
  out_edges.assign(n, {});
  in_edges.assign(n, {});
  for (std::uint32_t ei = 0; ei < edges.size(); ++ei) {
    const Edge& e = edges[ei];
    if (e.producer < n) out_edges[e.producer].push_back(ei);
    if (e.consumer < n) in_edges[e.consumer].push_back(ei);
  }
  auto by_consumer = [this](std::uint32_t a, std::uint32_t b) {
    return edges[a].consumer < edges[b].consumer;
  };
  auto by_producer = [this](std::uint32_t a, std::uint32_t b) {
    return edges[a].producer < edges[b].producer;
  };
  for (auto& v : out_edges) std::sort(v.begin(), v.end(), by_consumer);
  for (auto& v : in_edges) std::sort(v.begin(), v.end(), by_producer);

  for (auto& tp : tps) tp.members.clear();
  for (const Codelet& c : codelets) {
    for (auto& tp : tps) {
      if (tp.id == c.tp) {
        tp.members.push_back(c.id);
        break;
      }
    }
  }
}

void CodeletGraph::reset_slots_to_indegree() {
  if (in_edges.size() != codelets.size()) rebuild_adjacency();
  for (Codelet& c : codelets) {
    const auto deg = static_cast<std::uint32_t>(in_edges[c.id].size());
    c.slot.reset_count = deg;
    c.slot.current_count = deg;
  }
}

namespace {

// One cycle of a graph known to be cyclic, via iterative DFS.
std::vector<CodeletId> find_cycle(const CodeletGraph& g) {
  const std::size_t n = g.size();
  std::vector<int> color(n, 0);  // 0 white, 1 gray, 2 black
  std::vector<CodeletId> parent(n, 0);

  for (std::uint32_t root = 0; root < n; ++root) {
    if (color[root] != 0) continue;
    std::vector<std::pair<CodeletId, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < g.out_edges[v].size()) {
        const Edge& e = g.edges[g.out_edges[v][next++]];
        const CodeletId w = e.consumer;
        if (w >= n) continue;
        if (color[w] == 1) {
          // unwind v..w into a cycle
          std::vector<CodeletId> cycle{w};
          for (CodeletId u = v; u != w; u = parent[u]) cycle.push_back(u);
          std::reverse(cycle.begin() + 1, cycle.end());
          return cycle;
        }
        if (color[w] == 0) {
          color[w] = 1;
          parent[w] = v;
          stack.emplace_back(w, 0);
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return {};
}

std::string join_ids(const std::vector<CodeletId>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += "->";
    s += std::to_string(ids[i]);
  }
  return s;
}

}  // namespace

ValidationReport validate_graph(const CodeletGraph& g) {
  ValidationReport report;
  auto add = [&](Errc code, std::string detail, std::vector<CodeletId> cycle = {}) {
    report.violations.push_back({code, std::move(detail), std::move(cycle)});
  };

  const std::size_t n = g.size();
  for (std::uint32_t i = 0; i < n; ++i) {
    if (g.codelets[i].id != i)
      add(Errc::IdMismatch, "codelet at index " + std::to_string(i) + " has id " +
                                std::to_string(g.codelets[i].id));
  }

  bool endpoints_ok = true;
  std::set<std::pair<CodeletId, CodeletId>> seen;
  for (std::uint32_t ei = 0; ei < g.edges.size(); ++ei) {
    const Edge& e = g.edges[ei];
    if (e.producer >= n || e.consumer >= n) {
      add(Errc::DanglingEdge, "edge " + std::to_string(ei) + " references codelet " +
                                  std::to_string(e.producer >= n ? e.producer : e.consumer));
      endpoints_ok = false;
      continue;
    }
    if (!seen.insert({e.producer, e.consumer}).second)
      add(Errc::DuplicateEdge, "duplicate edge " + std::to_string(e.producer) + "->" +
                                   std::to_string(e.consumer));
  }

  // the remaining checks need consistent adjacency
  CodeletGraph scratch;
  const CodeletGraph* gp = &g;
  if (g.in_edges.size() != n || g.out_edges.size() != n) {
    scratch = g;
    scratch.rebuild_adjacency();
    gp = &scratch;
  }

  if (endpoints_ok) {
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto expected = static_cast<std::uint32_t>(gp->in_edges[i].size());
      const auto actual = g.codelets[i].slot.reset_count;
      if (expected != actual)
        add(Errc::SlotMismatch, "codelet " + std::to_string(i) + " expected reset " +
                                    std::to_string(expected) + ", actual " + std::to_string(actual));
    }
  }

  std::set<TpId> tp_ids;
  for (const auto& tp : g.tps) {
    if (!tp_ids.insert(tp.id).second)
      add(Errc::DuplicateTp, "duplicate TP id " + std::to_string(tp.id));
  }
  for (const Codelet& c : g.codelets) {
    if (tp_ids.count(c.tp) == 0)
      add(Errc::OrphanCodelet, "codelet " + std::to_string(c.id) + " references missing TP " +
                                   std::to_string(c.tp));
  }

  if (endpoints_ok) {
    try {
      (void)topo_order(*gp);
    } catch (const Error&) {
      auto cycle = find_cycle(*gp);
      add(Errc::CycleDetected, "cycle " + join_ids(cycle), cycle);
    }
  }

  report.ok = report.violations.empty();
  return report;
}

std::vector<CodeletId> topo_order(const CodeletGraph& g) {
  const std::size_t n = g.size();
  CodeletGraph scratch;
  const CodeletGraph* gp = &g;
  if (g.in_edges.size() != n || g.out_edges.size() != n) {
    scratch = g;
    scratch.rebuild_adjacency();
    gp = &scratch;
  }

  std::vector<std::uint32_t> indeg(n);
  std::priority_queue<CodeletId, std::vector<CodeletId>, std::greater<>> ready;
  for (std::uint32_t i = 0; i < n; ++i) {
    indeg[i] = static_cast<std::uint32_t>(gp->in_edges[i].size());
    if (indeg[i] == 0) ready.push(i);
  }

  std::vector<CodeletId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const CodeletId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::uint32_t ei : gp->out_edges[v]) {
      const CodeletId w = gp->edges[ei].consumer;
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  if (order.size() != n) {
    auto cycle = find_cycle(*gp);
    throw Error(Errc::CycleDetected, "cycle " + join_ids(cycle));
  }
  return order;
}

RunState make_run_state(const CodeletGraph& g) {
  RunState rs;
  const std::size_t n = g.size();
  rs.state.assign(n, CodeletState::Dormant);
  rs.slot.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    rs.slot[i].reset_count = g.codelets[i].slot.reset_count;
    rs.slot[i].current_count = g.codelets[i].slot.reset_count;
  }
  rs.edge_satisfied.assign(g.edges.size(), 0);
  rs.enable_time.assign(n, 0);
  return rs;
}

SignalOutcome satisfy_edge(const CodeletGraph& g, RunState& rs, std::uint32_t edge_index) {
  const Edge& e = g.edges.at(edge_index);
  if (rs.edge_satisfied[edge_index])
    throw Error(Errc::DoubleSignal, "edge " + std::to_string(e.producer) + "->" +
                                        std::to_string(e.consumer) + " already satisfied");
  SyncSlot& slot = rs.slot[e.consumer];
  if (slot.current_count == 0)
    throw Error(Errc::UnderflowSignal,
                "codelet " + std::to_string(e.consumer) + " dependency count already 0");
  rs.edge_satisfied[edge_index] = 1;
  slot.current_count -= 1;
  const bool became = slot.current_count == 0;
  if (became && rs.state[e.consumer] == CodeletState::Dormant)
    rs.state[e.consumer] = CodeletState::Enabled;
  return {slot.current_count, became};
}

void reset_codelet(const CodeletGraph& g, RunState& rs, CodeletId id) {
  if (id >= g.size()) throw Error(Errc::DanglingEdge, "no codelet " + std::to_string(id));
  if (rs.state[id] != CodeletState::Done)
    throw Error(Errc::InvalidReset, "codelet " + std::to_string(id) + " is " +
                                        state_name(rs.state[id]) + ", not done");
  rs.state[id] = CodeletState::Dormant;
  rs.slot[id].current_count = rs.slot[id].reset_count;
  for (std::uint32_t ei : g.in_edges[id]) rs.edge_satisfied[ei] = 0;
  rs.enable_time[id] = 0;
}

}  // namespace camsim
