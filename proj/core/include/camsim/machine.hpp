#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "camsim/graph.hpp"

namespace camsim {

struct ComputeUnit {
  std::uint32_t id = 0;
  ClusterId cluster = 0;
  ResourceClass cls;
};

struct Cluster {
  ClusterId id = 0;
  std::vector<std::uint32_t> cu_ids;  // ascending
};

struct ClusterSpec {
  ClusterId id = 0;
  std::vector<std::pair<ResourceClass, std::uint32_t>> cus;  // (class, count)
};

struct MachineSpec {
  std::vector<ClusterSpec> clusters;
  bool chiplets_enabled = false;
  std::optional<std::uint32_t> expected_total;  // cross-check when present
};

struct Machine {
  std::vector<ComputeUnit> cus;
  std::vector<Cluster> clusters;  // sorted by cluster id
  bool chiplets_enabled = false;
  std::map<std::string, std::uint32_t> class_counts;

  std::uint32_t total_cus() const { return static_cast<std::uint32_t>(cus.size()); }

  /// Index into clusters for a cluster id, or nullopt.
  std::optional<std::size_t> cluster_index(ClusterId id) const;
};

/// Builds the machine with dense CU ids ordered by (cluster id, class order:
/// conventional first then chiplet classes alphabetically, then index).
/// Deterministic: the same spec always yields the same id assignment.
Machine build_machine(const MachineSpec& spec);

struct CuSplit {
  std::uint32_t conventional = 0;
  std::uint32_t tpu_like = 0;
  std::uint32_t udp_like = 0;
};

/// Splits a CU budget for chiplet runs: exactly 1 conventional CU, the rest
/// divided evenly between the tpu-like and udp-like classes; an odd
/// remainder goes to tpu-like. Throws TooFewCUs below 3.
CuSplit split_cus(std::uint32_t total);

/// Single cluster of n conventional CUs.
Machine conventional_machine(std::uint32_t n);

/// Single cluster machine using split_cus(total), chiplets enabled.
Machine chiplet_machine(std::uint32_t total);

Machine load_machine(const std::string& path);
void save_machine(const MachineSpec& spec, const std::string& path);
MachineSpec machine_spec_from_json_text(const std::string& text);
std::string machine_spec_to_json_text(const MachineSpec& spec);

}  // namespace camsim
