#include "camsim/engine.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <queue>
#include <set>

#include "json_util.hpp"

namespace camsim {

namespace {

std::map<std::string, PolicyComparator>& policy_registry() {
  static std::map<std::string, PolicyComparator> registry{
      {"fifo", [](const CodeletGraph&, const ReadyEntry& a, const ReadyEntry& b) {
         return a.enable_time != b.enable_time ? a.enable_time < b.enable_time : a.id < b.id;
       }}};
  return registry;
}

std::mutex& policy_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void register_policy(const std::string& id, PolicyComparator cmp) {
  std::lock_guard<std::mutex> lock(policy_mutex());
  policy_registry()[id] = std::move(cmp);
}

bool policy_registered(const std::string& id) {
  std::lock_guard<std::mutex> lock(policy_mutex());
  return policy_registry().count(id) != 0;
}

namespace {

PolicyComparator get_policy(const std::string& id) {
  std::lock_guard<std::mutex> lock(policy_mutex());
  auto it = policy_registry().find(id);
  if (it == policy_registry().end())
    throw Error(Errc::UnknownPolicy, "scheduling policy '" + id + "' is not registered");
  return it->second;
}

// Idle CUs of one cluster, grouped by class for chiplet dispatch.
struct IdlePool {
  std::set<std::uint32_t> all;
  std::map<std::string, std::set<std::uint32_t>> by_class;

  void add(const ComputeUnit& cu) {
    all.insert(cu.id);
    by_class[cu.cls.name].insert(cu.id);
  }
  void remove(const ComputeUnit& cu) {
    all.erase(cu.id);
    by_class[cu.cls.name].erase(cu.id);
  }
  // lowest-id idle CU usable by `cls`; class-exact when chiplets are on
  std::optional<std::uint32_t> lowest(const ResourceClass& cls, bool chiplets) const {
    if (!chiplets) {
      if (all.empty()) return std::nullopt;
      return *all.begin();
    }
    auto it = by_class.find(cls.name);
    if (it == by_class.end() || it->second.empty()) return std::nullopt;
    return *it->second.begin();
  }
};

struct CompletionEvent {
  SimTime time;
  CodeletId id;
  bool operator>(const CompletionEvent& o) const {
    return time != o.time ? time > o.time : id > o.id;
  }
};

}  // namespace

std::vector<StuckCodelet> detect_deadlock(const CodeletGraph& g, const RunState& rs,
                                          const Machine& m, const SimConfig& cfg) {
  (void)m;
  (void)cfg;
  std::vector<StuckCodelet> stuck;
  for (CodeletId id = 0; id < g.size(); ++id) {
    if (rs.state[id] == CodeletState::Done) continue;
    const StuckReason reason = rs.state[id] == CodeletState::Dormant
                                   ? StuckReason::UnsatisfiedDeps
                                   : StuckReason::NoCompatibleCU;
    stuck.push_back({id, reason});
  }
  return stuck;
}

SimResult run(const CodeletGraph& g, const Machine& machine, const SimConfig& cfg) {
  const PolicyComparator policy = get_policy(cfg.policy);
  const std::size_t n = g.size();

  // TP affinity: map every codelet to its cluster index up front.
  std::vector<std::size_t> cluster_of(n, 0);
  for (const Codelet& c : g.codelets) {
    const ThreadedProcedure* tp = nullptr;
    for (const auto& t : g.tps)
      if (t.id == c.tp) tp = &t;
    if (!tp) throw Error(Errc::OrphanCodelet, "codelet " + std::to_string(c.id) + " has no TP");
    const auto idx = machine.cluster_index(tp->cluster);
    if (!idx)
      throw Error(Errc::UnknownCluster,
                  "TP " + std::to_string(tp->id) + " targets missing cluster " +
                      std::to_string(tp->cluster));
    cluster_of[c.id] = *idx;
  }

  // With chiplets on, matching is strict in both directions; refuse graphs
  // whose classes have no CU in the affinity cluster.
  if (cfg.chiplets) {
    for (const Codelet& c : g.codelets) {
      if (!c.resource_class.is_conventional() && cfg.multipliers.count(c.resource_class.name) == 0)
        throw Error(Errc::UnknownClass,
                    "no speedup multiplier for class '" + c.resource_class.name + "'");
      const Cluster& cl = machine.clusters[cluster_of[c.id]];
      bool found = false;
      for (std::uint32_t cu : cl.cu_ids)
        if (machine.cus[cu].cls == c.resource_class) found = true;
      if (!found)
        throw Error(Errc::ClassUnavailable,
                    "no '" + c.resource_class.name + "' CU in cluster " + std::to_string(cl.id) +
                        " for codelet " + std::to_string(c.id));
    }
  }

  RunState rs = make_run_state(g);
  std::vector<IdlePool> idle(machine.clusters.size());
  for (const Cluster& cl : machine.clusters) {
    const auto idx = *machine.cluster_index(cl.id);
    for (std::uint32_t cu : cl.cu_ids) idle[idx].add(machine.cus[cu]);
  }

  std::vector<std::vector<ReadyEntry>> ready(machine.clusters.size());
  std::priority_queue<CompletionEvent, std::vector<CompletionEvent>, std::greater<>> events;

  std::vector<SimTime> start_at(n, 0), end_at(n, 0);
  std::vector<std::uint32_t> cu_of(n, 0);
  std::vector<char> fired(n, 0);
  std::vector<SimTime> busy(machine.total_cus(), 0);
  std::vector<char> edge_pipelined(g.edges.size(), 0);
  std::size_t done_count = 0;

  std::vector<CodeletId> newly_enabled;
  auto enable = [&](CodeletId id, SimTime t) {
    rs.state[id] = CodeletState::Enabled;
    rs.enable_time[id] = t;
    ready[cluster_of[id]].push_back({t, id});
    newly_enabled.push_back(id);
  };

  // Pipelined early-enabling: an enabled pipeline-flagged codelet satisfies
  // its unsatisfied out-edges at the enable instant; cascades recurse.
  auto cascade = [&](SimTime t) {
    for (std::size_t i = 0; i < newly_enabled.size(); ++i) {
      const CodeletId id = newly_enabled[i];
      if (!cfg.pipelining || !g.codelets[id].pipeline_enabled) continue;
      for (std::uint32_t ei : g.out_edges[id]) {
        if (rs.edge_satisfied[ei]) continue;
        const SignalOutcome out = satisfy_edge(g, rs, ei);
        edge_pipelined[ei] = 1;
        if (out.became_enabled) enable(g.edges[ei].consumer, t);
      }
    }
    newly_enabled.clear();
  };

  auto dispatch = [&](SimTime t) {
    for (std::size_t ci = 0; ci < machine.clusters.size(); ++ci) {
      auto& queue = ready[ci];
      if (queue.empty()) continue;
      std::stable_sort(queue.begin(), queue.end(),
                       [&](const ReadyEntry& a, const ReadyEntry& b) { return policy(g, a, b); });
      std::vector<ReadyEntry> waiting;
      waiting.reserve(queue.size());
      for (const ReadyEntry& entry : queue) {
        const Codelet& c = g.codelets[entry.id];
        const auto cu = idle[ci].lowest(c.resource_class, cfg.chiplets);
        if (!cu) {
          waiting.push_back(entry);
          continue;
        }
        idle[ci].remove(machine.cus[*cu]);
        rs.state[entry.id] = CodeletState::Ready;   // CU available at this instant
        rs.state[entry.id] = CodeletState::Active;  // fires immediately
        const SimTime dur =
            effective_duration(c.base_cost, c.resource_class, cfg.chiplets, cfg.multipliers);
        start_at[entry.id] = t;
        end_at[entry.id] = t + dur;
        cu_of[entry.id] = *cu;
        fired[entry.id] = 1;
        busy[*cu] += dur;
        events.push({t + dur, entry.id});
      }
      queue = std::move(waiting);
    }
  };

  // Sources are enabled at t=0 without an explicit trigger.
  for (CodeletId id = 0; id < n; ++id)
    if (g.codelets[id].slot.reset_count == 0 && g.in_edges[id].empty()) enable(id, 0);
  cascade(0);
  dispatch(0);

  while (!events.empty()) {
    const SimTime t = events.top().time;
    while (!events.empty() && events.top().time == t) {
      const CodeletId id = events.top().id;
      events.pop();
      rs.state[id] = CodeletState::Done;
      ++done_count;
      idle[cluster_of[id]].add(machine.cus[cu_of[id]]);
      for (std::uint32_t ei : g.out_edges[id]) {
        if (rs.edge_satisfied[ei]) continue;  // already satisfied by a cascade
        const SignalOutcome out = satisfy_edge(g, rs, ei);
        if (out.became_enabled) enable(g.edges[ei].consumer, t);
      }
    }
    cascade(t);
    dispatch(t);
  }

  if (done_count != n) {
    const auto stuck = detect_deadlock(g, rs, machine, cfg);
    std::string what = "simulation stalled with " + std::to_string(stuck.size()) +
                       " codelet(s) unfinished; first stuck codelet " +
                       (stuck.empty() ? std::string("?") : std::to_string(stuck.front().id));
    throw DeadlockError(what, stuck);
  }

  SimResult result;
  result.trace.reserve(n);
  for (CodeletId id = 0; id < n; ++id) {
    if (!fired[id]) continue;
    result.trace.push_back({id, g.codelets[id].label, cu_of[id], start_at[id], end_at[id]});
  }
  std::sort(result.trace.begin(), result.trace.end(),
            [](const TraceRecord& a, const TraceRecord& b) {
              return a.start != b.start ? a.start < b.start : a.codelet < b.codelet;
            });
  result.makespan = 0;
  for (const TraceRecord& r : result.trace) result.makespan = std::max(result.makespan, r.end);
  result.cu_busy = std::move(busy);
  result.graph_name = g.name;
  result.tiles = g.tiles;
  result.pipelining = cfg.pipelining;
  result.chiplets = cfg.chiplets;
  result.total_cus = machine.total_cus();
  result.cus_by_class = machine.class_counts;
  result.enable_time = rs.enable_time;
  result.edge_pipelined = std::move(edge_pipelined);
  return result;
}

std::string trace_to_json_text(const SimResult& result) {
  using detail::json;
  json arr = json::array();
  for (const TraceRecord& r : result.trace) {
    arr.push_back({{"codelet", r.codelet},
                   {"label", r.label},
                   {"cu", r.cu},
                   {"start", r.start},
                   {"end", r.end}});
  }
  return arr.dump(2) + "\n";
}

void save_trace(const SimResult& result, const std::string& path) {
  detail::write_file(path, trace_to_json_text(result));
}

}  // namespace camsim
