#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "camsim/delay_model.hpp"
#include "camsim/graph.hpp"
#include "camsim/machine.hpp"

namespace camsim {

struct SimConfig {
  bool pipelining = false;
  bool chiplets = false;
  std::string policy = "fifo";
  Multipliers multipliers = default_multipliers();
};

struct TraceRecord {
  CodeletId codelet = 0;
  std::string label;
  std::uint32_t cu = 0;
  SimTime start = 0;
  SimTime end = 0;
};

struct SimResult {
  std::vector<TraceRecord> trace;  // sorted by (start, codelet)
  SimTime makespan = 0;
  std::vector<SimTime> cu_busy;  // per CU id

  // config echo
  std::string graph_name;
  std::optional<std::uint32_t> tiles;
  bool pipelining = false;
  bool chiplets = false;
  std::uint32_t total_cus = 0;
  std::map<std::string, std::uint32_t> cus_by_class;

  // per-run detail for analysis and invariant checks
  std::vector<SimTime> enable_time;      // per codelet
  std::vector<char> edge_pipelined;      // edge satisfied during an enable cascade
};

/// Ready-queue entry; the scheduling policy orders these.
struct ReadyEntry {
  SimTime enable_time = 0;
  CodeletId id = 0;
};

using PolicyComparator =
    std::function<bool(const CodeletGraph&, const ReadyEntry&, const ReadyEntry&)>;

/// Registers a scheduling policy. "fifo" (enable time, then canonical id)
/// is built in and is the default.
void register_policy(const std::string& id, PolicyComparator cmp);
bool policy_registered(const std::string& id);

class DeadlockError;

/// Deterministic discrete-event execution of a validated graph on a machine.
///
/// Per instant: (1) process all completions, satisfying the out-edges of the
/// completed codelets; (2) run pipelined enable cascades to fixpoint: an
/// enabled pipeline-enabled codelet immediately satisfies its unsatisfied
/// out-edges, recursively; (3) greedy dispatch per cluster: the front-most
/// compatible enabled codelet goes to the lowest-id idle CU whose class
/// matches (strict both ways with chiplets enabled, any CU otherwise);
/// (4) advance to the next completion. Signaling and scheduling cost no
/// time, and source codelets are enabled at t=0 without a trigger.
SimResult run(const CodeletGraph& graph, const Machine& machine, const SimConfig& config);

enum class StuckReason { UnsatisfiedDeps, NoCompatibleCU };

struct StuckCodelet {
  CodeletId id = 0;
  StuckReason reason = StuckReason::UnsatisfiedDeps;
};

/// Diagnoses a stalled run-state (no pending events, work remaining):
/// every non-Done codelet, Dormant ones as UnsatisfiedDeps, Enabled ones as
/// NoCompatibleCU.
std::vector<StuckCodelet> detect_deadlock(const CodeletGraph& g, const RunState& rs,
                                          const Machine& m, const SimConfig& cfg);

class DeadlockError : public Error {
public:
  DeadlockError(std::string what, std::vector<StuckCodelet> stuck)
      : Error(Errc::Deadlock, std::move(what)), stuck_(std::move(stuck)) {}
  const std::vector<StuckCodelet>& stuck() const { return stuck_; }

private:
  std::vector<StuckCodelet> stuck_;
};

/// Trace serialization: array of {codelet, label, cu, start, end} objects
/// sorted by (start, codelet).
std::string trace_to_json_text(const SimResult& result);
void save_trace(const SimResult& result, const std::string& path);

}  // namespace camsim
