#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "camsim/errors.hpp"

namespace camsim {

using CodeletId = std::uint32_t;
using TpId = std::uint32_t;
using ClusterId = std::uint32_t;
using SimTime = std::uint64_t;

/// Compute resource class of a codelet or CU: the conventional class or a
/// named chiplet class ("tpu-like", "udp-like", ...). Equality is exact
/// string match; ordering puts conventional first, then chiplets by name.
struct ResourceClass {
  std::string name = "conventional";

  static ResourceClass conventional() { return {}; }
  static ResourceClass chiplet(std::string n) {
    if (n.empty() || n == "conventional")
      throw Error(Errc::ParseError, "invalid chiplet class name '" + n + "'");
    return ResourceClass{std::move(n)};
  }
  static ResourceClass from_string(const std::string& s) {
    if (s == "conventional") return conventional();
    return chiplet(s);
  }

  bool is_conventional() const { return name == "conventional"; }
  bool operator==(const ResourceClass& o) const { return name == o.name; }
  bool operator!=(const ResourceClass& o) const { return name != o.name; }
  bool operator<(const ResourceClass& o) const {
    if (is_conventional() != o.is_conventional()) return is_conventional();
    return name < o.name;
  }
};

/// Dependency counter: reset value equals the in-degree, the current count
/// tracks unsatisfied in-edges of the current run.
struct SyncSlot {
  std::uint32_t reset_count = 0;
  std::uint32_t current_count = 0;
};

enum class CodeletState { Dormant, Enabled, Ready, Active, Done };

const char* state_name(CodeletState s);

struct Codelet {
  CodeletId id = 0;
  std::string label;
  std::string kind = "user";
  SimTime base_cost = 0;
  ResourceClass resource_class;
  bool pipeline_enabled = false;
  SyncSlot slot;
  CodeletState state = CodeletState::Dormant;
  TpId tp = 0;
};

struct Edge {
  CodeletId producer = 0;
  CodeletId consumer = 0;
  bool satisfied = false;
};

struct ThreadedProcedure {
  TpId id = 0;
  ClusterId cluster = 0;
  std::vector<CodeletId> members;  // filled by rebuild_adjacency()
};

/// Program DAG. Structure is immutable once validated; all per-run state
/// (slot counts, edge satisfaction, codelet states) is cloned into a
/// RunState so graphs can be shared across concurrent simulations.
struct CodeletGraph {
  std::string name;
  std::optional<std::uint32_t> tiles;
  std::vector<Codelet> codelets;
  std::vector<Edge> edges;
  std::vector<ThreadedProcedure> tps;

  // adjacency as edge indices, consumers/producers in ascending id order
  std::vector<std::vector<std::uint32_t>> out_edges;
  std::vector<std::vector<std::uint32_t>> in_edges;

  std::size_t size() const { return codelets.size(); }

  /// Recomputes adjacency lists and TP member lists from codelets/edges.
  void rebuild_adjacency();

  /// Sets every slot's reset and current count to the codelet's in-degree.
  void reset_slots_to_indegree();
};

struct Violation {
  Errc code;
  std::string detail;
  std::vector<CodeletId> cycle;  // populated for CycleDetected
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

/// Structural validation: dense ids, edge endpoints in range, no duplicate
/// edges, slot resets equal to in-degrees, TPs partition the codelets, and
/// acyclicity (a self-edge reports as a length-1 cycle).
ValidationReport validate_graph(const CodeletGraph& g);

/// Deterministic topological order: edges go forward, ties broken by
/// ascending codelet id. Throws CycleDetected on cyclic graphs.
std::vector<CodeletId> topo_order(const CodeletGraph& g);

/// Per-run mutable state, cloned from the graph's initial state.
struct RunState {
  std::vector<CodeletState> state;
  std::vector<SyncSlot> slot;
  std::vector<char> edge_satisfied;
  std::vector<SimTime> enable_time;
};

RunState make_run_state(const CodeletGraph& g);

struct SignalOutcome {
  std::uint32_t new_count = 0;
  bool became_enabled = false;
};

/// Marks one in-edge of the consumer satisfied and decrements its slot.
/// The consumer flips Dormant -> Enabled when the count reaches zero.
/// Throws DoubleSignal / UnderflowSignal on repeated or excess signals.
SignalOutcome satisfy_edge(const CodeletGraph& g, RunState& rs, std::uint32_t edge_index);

/// Done -> Dormant: restores the slot to its reset value and clears the
/// satisfaction flags of all in-edges. Throws InvalidReset unless Done
/// (codelets are non-preemptive and cannot be reset mid-flight).
void reset_codelet(const CodeletGraph& g, RunState& rs, CodeletId id);

}  // namespace camsim
