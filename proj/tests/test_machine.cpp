#include <random>

#include "doctest.h"

#include "camsim/machine.hpp"
#include "test_support.hpp"

using namespace camsim;

TEST_CASE("a single cluster of 64 conventional CUs gets ids 0..63") {
  const Machine m = conventional_machine(64);
  CHECK(m.total_cus() == 64);
  for (std::uint32_t i = 0; i < 64; ++i) {
    CHECK(m.cus[i].id == i);
    CHECK(m.cus[i].cls.is_conventional());
    CHECK(m.cus[i].cluster == 0);
  }
  CHECK(m.class_counts.at("conventional") == 64);
}

TEST_CASE("chiplet machine orders conventional first, then chiplets alphabetically") {
  const Machine m = chiplet_machine(64);
  CHECK(m.total_cus() == 64);
  CHECK(m.cus[0].cls.is_conventional());
  for (std::uint32_t i = 1; i <= 32; ++i) CHECK(m.cus[i].cls.name == "tpu-like");
  for (std::uint32_t i = 33; i <= 63; ++i) CHECK(m.cus[i].cls.name == "udp-like");
  CHECK(m.class_counts.at("conventional") == 1);
  CHECK(m.class_counts.at("tpu-like") == 32);
  CHECK(m.class_counts.at("udp-like") == 31);
  CHECK(m.chiplets_enabled);
}

TEST_CASE("build_machine rejects empty input") {
  MachineSpec spec;
  CHECK_ERRC(build_machine(spec), Errc::EmptyCluster);

  spec.clusters.push_back({0, {}});
  CHECK_ERRC(build_machine(spec), Errc::EmptyCluster);
}

TEST_CASE("build_machine cross-checks a declared total") {
  MachineSpec spec;
  spec.clusters.push_back({0, {{ResourceClass::conventional(), 4}}});
  spec.expected_total = 5;
  CHECK_ERRC(build_machine(spec), Errc::CountMismatch);
}

TEST_CASE("build_machine is deterministic") {
  MachineSpec spec;
  spec.clusters.push_back({1, {{ResourceClass::chiplet("udp-like"), 2}}});
  spec.clusters.push_back({0,
                           {{ResourceClass::chiplet("tpu-like"), 1},
                            {ResourceClass::conventional(), 2}}});
  const Machine a = build_machine(spec);
  const Machine b = build_machine(spec);
  REQUIRE(a.total_cus() == b.total_cus());
  for (std::uint32_t i = 0; i < a.total_cus(); ++i) {
    CHECK(a.cus[i].cls == b.cus[i].cls);
    CHECK(a.cus[i].cluster == b.cus[i].cluster);
  }
  // cluster 0 first, conventional before chiplet
  CHECK(a.cus[0].cluster == 0);
  CHECK(a.cus[0].cls.is_conventional());
  CHECK(a.cus[2].cls.name == "tpu-like");
  CHECK(a.cus[3].cluster == 1);
}

TEST_CASE("split_cus keeps one conventional CU and favors tpu-like on odd splits") {
  const CuSplit s64 = split_cus(64);
  CHECK(s64.conventional == 1);
  CHECK(s64.tpu_like == 32);
  CHECK(s64.udp_like == 31);

  const CuSplit s65 = split_cus(65);
  CHECK(s65.tpu_like == 32);
  CHECK(s65.udp_like == 32);

  CHECK_ERRC(split_cus(2), Errc::TooFewCUs);
}

TEST_CASE("split_cus counts always sum to the total") {
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::uint32_t total = 3 + rng() % 500;
    const CuSplit s = split_cus(total);
    CHECK(s.conventional == 1);
    CHECK(s.conventional + s.tpu_like + s.udp_like == total);
    CHECK((s.tpu_like == s.udp_like || s.tpu_like == s.udp_like + 1));
  }
}
