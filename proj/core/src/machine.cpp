#include "camsim/machine.hpp"

#include <algorithm>

#include "json_util.hpp"

namespace camsim {

std::optional<std::size_t> Machine::cluster_index(ClusterId id) const {
  for (std::size_t i = 0; i < clusters.size(); ++i)
    if (clusters[i].id == id) return i;
  return std::nullopt;
}

Machine build_machine(const MachineSpec& spec) {
  if (spec.clusters.empty()) throw Error(Errc::EmptyCluster, "machine has no clusters");

  std::vector<ClusterSpec> ordered = spec.clusters;
  std::sort(ordered.begin(), ordered.end(),
            [](const ClusterSpec& a, const ClusterSpec& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < ordered.size(); ++i)
    if (ordered[i].id == ordered[i - 1].id)
      throw Error(Errc::CountMismatch, "duplicate cluster id " + std::to_string(ordered[i].id));

  Machine m;
  m.chiplets_enabled = spec.chiplets_enabled;
  std::uint32_t next_id = 0;
  for (const ClusterSpec& cs : ordered) {
    // aggregate per class, conventional first then chiplets alphabetically
    std::map<ResourceClass, std::uint32_t> counts;
    for (const auto& [cls, count] : cs.cus) counts[cls] += count;

    Cluster cluster;
    cluster.id = cs.id;
    for (const auto& [cls, count] : counts) {
      for (std::uint32_t i = 0; i < count; ++i) {
        m.cus.push_back({next_id, cs.id, cls});
        cluster.cu_ids.push_back(next_id);
        ++next_id;
      }
      if (count > 0) m.class_counts[cls.name] += count;
    }
    if (cluster.cu_ids.empty())
      throw Error(Errc::EmptyCluster, "cluster " + std::to_string(cs.id) + " has no CUs");
    m.clusters.push_back(std::move(cluster));
  }

  if (spec.expected_total && *spec.expected_total != m.total_cus())
    throw Error(Errc::CountMismatch, "declared total " + std::to_string(*spec.expected_total) +
                                         " but clusters define " + std::to_string(m.total_cus()));
  return m;
}

CuSplit split_cus(std::uint32_t total) {
  if (total < 3)
    throw Error(Errc::TooFewCUs, "chiplet split needs at least 3 CUs, got " + std::to_string(total));
  const std::uint32_t rest = total - 1;
  return {1, (rest + 1) / 2, rest / 2};  // odd remainder goes to tpu-like
}

Machine conventional_machine(std::uint32_t n) {
  MachineSpec spec;
  spec.clusters.push_back({0, {{ResourceClass::conventional(), n}}});
  spec.chiplets_enabled = false;
  spec.expected_total = n;
  return build_machine(spec);
}

Machine chiplet_machine(std::uint32_t total) {
  const CuSplit split = split_cus(total);
  MachineSpec spec;
  spec.clusters.push_back({0,
                           {{ResourceClass::conventional(), split.conventional},
                            {ResourceClass::chiplet("tpu-like"), split.tpu_like},
                            {ResourceClass::chiplet("udp-like"), split.udp_like}}});
  spec.chiplets_enabled = true;
  spec.expected_total = total;
  return build_machine(spec);
}

using detail::json;

MachineSpec machine_spec_from_json_text(const std::string& text) {
  const json j = detail::parse_text(text, "machine");
  detail::require_keys(j, {"clusters", "chiplets_enabled"}, {"clusters", "chiplets_enabled"},
                       "machine");
  MachineSpec spec;
  if (!j.at("chiplets_enabled").is_boolean())
    throw Error(Errc::ParseError, "machine: chiplets_enabled must be a boolean");
  spec.chiplets_enabled = j.at("chiplets_enabled").get<bool>();

  const json& clusters = j.at("clusters");
  if (!clusters.is_array()) throw Error(Errc::ParseError, "machine: clusters must be an array");
  for (const json& jc : clusters) {
    detail::require_keys(jc, {"id", "cus"}, {"id", "cus"}, "cluster");
    ClusterSpec cs;
    cs.id = detail::get_uint<ClusterId>(jc.at("id"), "cluster id");
    const json& cus = jc.at("cus");
    if (!cus.is_array()) throw Error(Errc::ParseError, "machine: cus must be an array");
    for (const json& ju : cus) {
      detail::require_keys(ju, {"class", "count"}, {"class", "count"}, "cu group");
      cs.cus.emplace_back(ResourceClass::from_string(ju.at("class").get<std::string>()),
                          detail::get_uint<std::uint32_t>(ju.at("count"), "cu count"));
    }
    spec.clusters.push_back(std::move(cs));
  }
  return spec;
}

std::string machine_spec_to_json_text(const MachineSpec& spec) {
  json clusters = json::array();
  for (const ClusterSpec& cs : spec.clusters) {
    json cus = json::array();
    for (const auto& [cls, count] : cs.cus)
      cus.push_back({{"class", cls.name}, {"count", count}});
    clusters.push_back({{"id", cs.id}, {"cus", std::move(cus)}});
  }
  json j{{"clusters", std::move(clusters)}, {"chiplets_enabled", spec.chiplets_enabled}};
  return j.dump(2) + "\n";
}

Machine load_machine(const std::string& path) {
  return build_machine(machine_spec_from_json_text(detail::read_file(path)));
}

void save_machine(const MachineSpec& spec, const std::string& path) {
  detail::write_file(path, machine_spec_to_json_text(spec));
}

}  // namespace camsim
