#pragma once

#include <cstdint>

#include "camsim/delay_model.hpp"
#include "camsim/graph.hpp"

namespace camsim {

enum class GemmMethod { Outer, Inner };

const char* method_name(GemmMethod m);
GemmMethod method_from_string(const std::string& s);

struct GemmParams {
  std::uint32_t tiles = 8;  // power of two >= 2 (the sum tree requires it)
  GemmMethod method = GemmMethod::Outer;
  bool pipeline = false;
  bool chiplets = false;
  DelayProfile profile = paper_calibrated(GraphFamily::Outer);
};

/// Outer-product GEMM graph:
///   start -> T conv -> T vmul (conv_i -> vmul_i) -> binary sum tree -> end
/// 3T+1 nodes, 4T-1 edges. Canonical ids: start=0, convs, vmuls, sums
/// level by level from the leaves, end last. Chiplet classes: conv udp-like,
/// vmul/sum tpu-like, start/end conventional. Pipeline flags on conv, vmul
/// and sum only.
CodeletGraph gen_outer(const GemmParams& params);

/// Inner-product GEMM graph:
///   start -> T independent chains (conv_i -> dot_i) -> end
/// 2T+2 nodes, 3T edges. Chiplet classes: conv udp-like, dot tpu-like.
CodeletGraph gen_inner(const GemmParams& params);

CodeletGraph generate_gemm(const GemmParams& params);

}  // namespace camsim
