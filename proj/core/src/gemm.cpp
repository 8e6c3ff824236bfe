#include "camsim/gemm.hpp"

namespace camsim {

const char* method_name(GemmMethod m) { return m == GemmMethod::Outer ? "outer" : "inner"; }

GemmMethod method_from_string(const std::string& s) {
  if (s == "outer") return GemmMethod::Outer;
  if (s == "inner") return GemmMethod::Inner;
  throw Error(Errc::ParseError, "unknown method '" + s + "'");
}

namespace {

bool is_pow2(std::uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

void check_params(const GemmParams& p, GemmMethod method) {
  if (p.tiles < 2 || !is_pow2(p.tiles))
    throw Error(Errc::BadTiles, "tiles must be a power of two >= 2, got " + std::to_string(p.tiles));
  const GraphFamily want = method == GemmMethod::Outer ? GraphFamily::Outer : GraphFamily::Inner;
  if (p.profile.family != want)
    throw Error(Errc::FamilyMismatch, std::string("profile family ") + family_name(p.profile.family) +
                                          " does not match method " + method_name(method));
}

Codelet make_codelet(CodeletId id, std::string label, std::string kind, SimTime cost,
                     ResourceClass cls, bool pipeline) {
  Codelet c;
  c.id = id;
  c.label = std::move(label);
  c.kind = std::move(kind);
  c.base_cost = cost;
  c.resource_class = std::move(cls);
  c.pipeline_enabled = pipeline;
  c.tp = 0;
  return c;
}

}  // namespace

CodeletGraph gen_outer(const GemmParams& p) {
  check_params(p, GemmMethod::Outer);
  const std::uint32_t T = p.tiles;
  const ResourceClass conv_cls =
      p.chiplets ? ResourceClass::chiplet("udp-like") : ResourceClass::conventional();
  const ResourceClass calc_cls =
      p.chiplets ? ResourceClass::chiplet("tpu-like") : ResourceClass::conventional();

  const SimTime conv_cost = eval_cost(p.profile.kind("conv"), T);
  const SimTime vmul_cost = eval_cost(p.profile.kind("vmul"), T);
  const SimTime sum_cost = eval_cost(p.profile.kind("sum"), T);

  CodeletGraph g;
  g.name = std::string("gemm-outer-") + std::to_string(T);
  g.tiles = T;
  g.tps.push_back({0, 0, {}});

  // ids: start, convs, vmuls, sums level by level from the leaves, end
  g.codelets.push_back(
      make_codelet(0, "start", "start", p.profile.start_cost, ResourceClass::conventional(), false));
  for (std::uint32_t i = 0; i < T; ++i)
    g.codelets.push_back(make_codelet(1 + i, "conv" + std::to_string(i), "conv", conv_cost,
                                      conv_cls, p.pipeline));
  for (std::uint32_t i = 0; i < T; ++i)
    g.codelets.push_back(make_codelet(1 + T + i, "vmul" + std::to_string(i), "vmul", vmul_cost,
                                      calc_cls, p.pipeline));
  const CodeletId first_sum = 1 + 2 * T;
  for (std::uint32_t i = 0; i < T - 1; ++i)
    g.codelets.push_back(make_codelet(first_sum + i, "sum" + std::to_string(i), "sum", sum_cost,
                                      calc_cls, p.pipeline));
  const CodeletId end_id = 3 * T;
  g.codelets.push_back(
      make_codelet(end_id, "end", "end", p.profile.end_cost, ResourceClass::conventional(), false));

  for (std::uint32_t i = 0; i < T; ++i) g.edges.push_back({0, 1 + i});
  for (std::uint32_t i = 0; i < T; ++i) g.edges.push_back({1 + i, 1 + T + i});
  // binary sum tree: level widths T/2, T/4, ..., 1
  std::uint32_t level_base = first_sum;
  std::uint32_t width = T / 2;
  // leaves consume vmul pairs
  for (std::uint32_t j = 0; j < width; ++j) {
    g.edges.push_back({1 + T + 2 * j, level_base + j});
    g.edges.push_back({1 + T + 2 * j + 1, level_base + j});
  }
  while (width > 1) {
    const std::uint32_t next_base = level_base + width;
    for (std::uint32_t j = 0; j < width / 2; ++j) {
      g.edges.push_back({level_base + 2 * j, next_base + j});
      g.edges.push_back({level_base + 2 * j + 1, next_base + j});
    }
    level_base = next_base;
    width /= 2;
  }
  g.edges.push_back({level_base, end_id});  // root of the tree

  g.rebuild_adjacency();
  g.reset_slots_to_indegree();
  return g;
}

CodeletGraph gen_inner(const GemmParams& p) {
  check_params(p, GemmMethod::Inner);
  const std::uint32_t T = p.tiles;
  const ResourceClass conv_cls =
      p.chiplets ? ResourceClass::chiplet("udp-like") : ResourceClass::conventional();
  const ResourceClass dot_cls =
      p.chiplets ? ResourceClass::chiplet("tpu-like") : ResourceClass::conventional();

  const SimTime conv_cost = eval_cost(p.profile.kind("conv"), T);
  const SimTime dot_cost = eval_cost(p.profile.kind("dot"), T);

  CodeletGraph g;
  g.name = std::string("gemm-inner-") + std::to_string(T);
  g.tiles = T;
  g.tps.push_back({0, 0, {}});

  g.codelets.push_back(
      make_codelet(0, "start", "start", p.profile.start_cost, ResourceClass::conventional(), false));
  for (std::uint32_t i = 0; i < T; ++i)
    g.codelets.push_back(make_codelet(1 + i, "conv" + std::to_string(i), "conv", conv_cost,
                                      conv_cls, p.pipeline));
  for (std::uint32_t i = 0; i < T; ++i)
    g.codelets.push_back(make_codelet(1 + T + i, "dot" + std::to_string(i), "dot", dot_cost,
                                      dot_cls, p.pipeline));
  const CodeletId end_id = 2 * T + 1;
  g.codelets.push_back(
      make_codelet(end_id, "end", "end", p.profile.end_cost, ResourceClass::conventional(), false));

  for (std::uint32_t i = 0; i < T; ++i) g.edges.push_back({0, 1 + i});
  for (std::uint32_t i = 0; i < T; ++i) g.edges.push_back({1 + i, 1 + T + i});
  for (std::uint32_t i = 0; i < T; ++i) g.edges.push_back({1 + T + i, end_id});

  g.rebuild_adjacency();
  g.reset_slots_to_indegree();
  return g;
}

CodeletGraph generate_gemm(const GemmParams& p) {
  return p.method == GemmMethod::Outer ? gen_outer(p) : gen_inner(p);
}

}  // namespace camsim
