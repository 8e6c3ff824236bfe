#pragma once

#include <string>
#include <vector>

#include "doctest.h"

#include "camsim/graph.hpp"

namespace camsim::test {

/// Builds a single-TP graph from codelet costs and edge pairs; slots are set
/// from in-degrees.
inline CodeletGraph make_graph(const std::vector<SimTime>& costs,
                               const std::vector<std::pair<CodeletId, CodeletId>>& edges) {
  CodeletGraph g;
  g.name = "test";
  for (CodeletId i = 0; i < costs.size(); ++i) {
    Codelet c;
    c.id = i;
    c.label = "c" + std::to_string(i);
    c.kind = "user";
    c.base_cost = costs[i];
    g.codelets.push_back(std::move(c));
  }
  for (const auto& [p, q] : edges) g.edges.push_back({p, q});
  g.tps.push_back({0, 0, {}});
  g.rebuild_adjacency();
  g.reset_slots_to_indegree();
  return g;
}

inline bool has_violation(const ValidationReport& r, Errc code) {
  for (const auto& v : r.violations)
    if (v.code == code) return true;
  return false;
}

}  // namespace camsim::test

// Checks that `expr` throws camsim::Error with the given code.
#define CHECK_ERRC(expr, errc)                       \
  do {                                               \
    bool caught_ = false;                            \
    try {                                            \
      (void)(expr);                                  \
    } catch (const camsim::Error& e_) {              \
      caught_ = true;                                \
      CHECK(e_.code() == (errc));                    \
    }                                                \
    CHECK_MESSAGE(caught_, "expected " #errc);       \
  } while (0)
