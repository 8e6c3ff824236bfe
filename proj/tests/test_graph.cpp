#include <random>

#include "doctest.h"

#include "camsim/engine.hpp"
#include "camsim/graph.hpp"
#include "camsim/machine.hpp"
#include "test_support.hpp"

using namespace camsim;
using camsim::test::has_violation;
using camsim::test::make_graph;

TEST_CASE("validate accepts a consistent chain") {
  const auto g = make_graph({1, 1, 1}, {{0, 1}, {1, 2}});
  CHECK(g.codelets[0].slot.reset_count == 0);
  CHECK(g.codelets[1].slot.reset_count == 1);
  CHECK(g.codelets[2].slot.reset_count == 1);
  const auto report = validate_graph(g);
  CHECK(report.ok);
  CHECK(report.violations.empty());
}

TEST_CASE("validate rejects a 2-cycle") {
  auto g = make_graph({1, 1}, {{0, 1}, {1, 0}});
  const auto report = validate_graph(g);
  CHECK(!report.ok);
  CHECK(has_violation(report, Errc::CycleDetected));
}

TEST_CASE("validate reports slot mismatches with expected and actual counts") {
  auto g = make_graph({1, 1}, {{0, 1}});
  g.codelets[1].slot.reset_count = 2;
  const auto report = validate_graph(g);
  CHECK(!report.ok);
  REQUIRE(has_violation(report, Errc::SlotMismatch));
  for (const auto& v : report.violations) {
    if (v.code != Errc::SlotMismatch) continue;
    CHECK(v.detail.find("codelet 1") != std::string::npos);
    CHECK(v.detail.find("expected reset 1") != std::string::npos);
    CHECK(v.detail.find("actual 2") != std::string::npos);
  }
}

TEST_CASE("validate rejects dangling edges, orphans and duplicates") {
  auto g = make_graph({1, 1}, {{0, 1}});
  g.edges.push_back({0, 7});
  auto report = validate_graph(g);
  CHECK(has_violation(report, Errc::DanglingEdge));

  g = make_graph({1, 1}, {{0, 1}, {0, 1}});
  report = validate_graph(g);
  CHECK(has_violation(report, Errc::DuplicateEdge));

  g = make_graph({1}, {});
  g.codelets[0].tp = 9;
  report = validate_graph(g);
  CHECK(has_violation(report, Errc::OrphanCodelet));

  // a self-edge is a length-1 cycle
  g = make_graph({1}, {{0, 0}});
  report = validate_graph(g);
  CHECK(has_violation(report, Errc::CycleDetected));
}

TEST_CASE("topological order is deterministic with id tie-breaks") {
  SUBCASE("chain") {
    const auto g = make_graph({1, 1, 1}, {{0, 1}, {1, 2}});
    CHECK(topo_order(g) == std::vector<CodeletId>{0, 1, 2});
  }
  SUBCASE("diamond breaks ties by ascending id") {
    const auto g = make_graph({1, 1, 1, 1}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    CHECK(topo_order(g) == std::vector<CodeletId>{0, 1, 2, 3});
  }
  SUBCASE("empty graph") {
    CodeletGraph g;
    g.rebuild_adjacency();
    CHECK(topo_order(g).empty());
  }
  SUBCASE("cycle throws") {
    const auto g = make_graph({1, 1}, {{0, 1}, {1, 0}});
    CHECK_ERRC(topo_order(g), Errc::CycleDetected);
  }
}

TEST_CASE("validate accepts exactly the graphs topo_order accepts") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint32_t n = 1 + rng() % 7;
    std::vector<std::pair<CodeletId, CodeletId>> edges;
    for (CodeletId a = 0; a < n; ++a)
      for (CodeletId b = 0; b < n; ++b)
        if (a != b && rng() % 4 == 0) edges.push_back({a, b});
    const auto g = make_graph(std::vector<SimTime>(n, 1), edges);
    // drop duplicate pairs introduced above
    const auto report = validate_graph(g);
    bool topo_ok = true;
    try {
      (void)topo_order(g);
    } catch (const Error&) {
      topo_ok = false;
    }
    const bool acyclic_per_validate = !has_violation(report, Errc::CycleDetected);
    CHECK(acyclic_per_validate == topo_ok);
  }
}

TEST_CASE("satisfy_edge counts down and enables at zero") {
  const auto g = make_graph({1, 1, 1}, {{0, 2}, {1, 2}});
  auto rs = make_run_state(g);
  CHECK(rs.slot[2].current_count == 2);

  const auto first = satisfy_edge(g, rs, 0);
  CHECK(first.new_count == 1);
  CHECK(!first.became_enabled);
  CHECK(rs.state[2] == CodeletState::Dormant);

  const auto second = satisfy_edge(g, rs, 1);
  CHECK(second.new_count == 0);
  CHECK(second.became_enabled);
  CHECK(rs.state[2] == CodeletState::Enabled);

  SUBCASE("signalling a satisfied edge is rejected") {
    CHECK_ERRC(satisfy_edge(g, rs, 0), Errc::DoubleSignal);
  }
}

TEST_CASE("satisfy_edge underflow on a forged slot") {
  auto g = make_graph({1, 1}, {{0, 1}});
  g.codelets[1].slot.reset_count = 0;  // forged below the in-degree
  auto rs = make_run_state(g);
  CHECK_ERRC(satisfy_edge(g, rs, 0), Errc::UnderflowSignal);
}

TEST_CASE("current_count always equals the number of unsatisfied in-edges") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    // layered random DAG so every edge can be satisfied in a random order
    const std::uint32_t n = 2 + rng() % 6;
    std::vector<std::pair<CodeletId, CodeletId>> edges;
    for (CodeletId a = 0; a < n; ++a)
      for (CodeletId b = a + 1; b < n; ++b)
        if (rng() % 3 == 0) edges.push_back({a, b});
    const auto g = make_graph(std::vector<SimTime>(n, 1), edges);
    auto rs = make_run_state(g);

    std::vector<std::uint32_t> order(g.edges.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::uint32_t ei : order) {
      satisfy_edge(g, rs, ei);
      for (CodeletId id = 0; id < n; ++id) {
        std::uint32_t unsatisfied = 0;
        for (std::uint32_t in : g.in_edges[id])
          if (!rs.edge_satisfied[in]) ++unsatisfied;
        CHECK(rs.slot[id].current_count == unsatisfied);
      }
    }
  }
}

TEST_CASE("reset returns a done codelet to dormant with a full slot") {
  const auto g = make_graph({1, 1, 1, 1}, {{0, 3}, {1, 3}, {2, 3}});
  auto rs = make_run_state(g);
  for (std::uint32_t ei = 0; ei < 3; ++ei) satisfy_edge(g, rs, ei);
  rs.state[3] = CodeletState::Done;  // as if it ran to completion

  reset_codelet(g, rs, 3);
  CHECK(rs.state[3] == CodeletState::Dormant);
  CHECK(rs.slot[3].current_count == 3);
  for (std::uint32_t ei : g.in_edges[3]) CHECK(!rs.edge_satisfied[ei]);
}

TEST_CASE("reset rejects codelets that are not done") {
  const auto g = make_graph({1}, {});
  auto rs = make_run_state(g);
  rs.state[0] = CodeletState::Active;  // non-preemptive: may not be reset mid-flight
  CHECK_ERRC(reset_codelet(g, rs, 0), Errc::InvalidReset);
}

TEST_CASE("a reset graph re-runs to an identical trace") {
  const auto g = make_graph({3, 5}, {{0, 1}});
  const Machine m = conventional_machine(1);
  const SimConfig cfg;

  const SimResult first = run(g, m, cfg);
  // drive a run-state to completion by hand, reset it, and check it matches
  // the pristine state ...
  auto rs = make_run_state(g);
  rs.state[0] = CodeletState::Done;
  satisfy_edge(g, rs, 0);
  rs.state[1] = CodeletState::Done;
  reset_codelet(g, rs, 0);
  reset_codelet(g, rs, 1);
  const auto fresh = make_run_state(g);
  CHECK(rs.state == fresh.state);
  CHECK(rs.edge_satisfied == fresh.edge_satisfied);
  for (CodeletId i = 0; i < g.size(); ++i)
    CHECK(rs.slot[i].current_count == fresh.slot[i].current_count);

  // ... so a second engine run reproduces the first trace exactly
  const SimResult second = run(g, m, cfg);
  CHECK(trace_to_json_text(first) == trace_to_json_text(second));
  CHECK(first.makespan == 8);
}
