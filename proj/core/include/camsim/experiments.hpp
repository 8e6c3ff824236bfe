#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "camsim/engine.hpp"
#include "camsim/gemm.hpp"
#include "camsim/metrics.hpp"

namespace camsim {

/// A sweep over (method, tiles, configuration) cells at a fixed CU budget.
/// Chiplet configurations replace compute resources rather than adding them:
/// the total CU count is constant and split 1 conventional + two chiplet
/// classes for chiplet runs.
struct ExperimentSpec {
  std::vector<GemmMethod> methods{GemmMethod::Outer, GemmMethod::Inner};
  std::vector<std::uint32_t> tiles{8, 16, 32, 64};
  std::vector<RunConfigKind> configs{RunConfigKind::Basic, RunConfigKind::Pipelined,
                                     RunConfigKind::Chiplets, RunConfigKind::Both};
  std::uint32_t total_cus = 64;
  std::string profile_ref = "paper-calibrated";
};

struct SweepOutput {
  std::vector<std::pair<GemmMethod, ResultTable>> tables;  // in method order

  const ResultTable& table(GemmMethod m) const;
};

/// One simulation cell.
SimResult run_cell(GemmMethod method, std::uint32_t tiles, RunConfigKind config,
                   std::uint32_t total_cus, const DelayProfile& profile);

SweepOutput sweep(const ExperimentSpec& spec);

/// CSV emission. A single-method sweep uses the plain ResultTable format;
/// multi-method sweeps emit one column block per method, headers prefixed
/// with the method name ("outer_basic", ...).
std::string sweep_results_csv(const SweepOutput& out);
std::string sweep_speedup_csv(const SweepOutput& out);

}  // namespace camsim
