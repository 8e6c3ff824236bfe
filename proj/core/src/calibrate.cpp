#include "camsim/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "camsim/experiments.hpp"
#include "camsim/gemm.hpp"

namespace camsim {

namespace {

unsigned log2u(std::uint32_t v) {
  unsigned l = 0;
  while (v > 1) {
    v >>= 1;
    ++l;
  }
  return l;
}

struct Shape {
  std::vector<unsigned> stage_exps;  // exponent-descending
  std::vector<unsigned> tree_exps;   // exponent-descending, outer only
  std::int64_t denom = 1;
};

Shape resolve_shape(GraphFamily family, const SearchBounds& b) {
  Shape s;
  if (b.stage_exponents)
    s.stage_exps = *b.stage_exponents;
  else
    s.stage_exps = family == GraphFamily::Outer ? std::vector<unsigned>{1}
                                                : std::vector<unsigned>{3, 2};
  if (b.tree_exponents)
    s.tree_exps = *b.tree_exponents;
  else
    s.tree_exps = family == GraphFamily::Outer ? std::vector<unsigned>{2, 0}
                                               : std::vector<unsigned>{};
  auto desc = [](unsigned a, unsigned bb) { return a > bb; };
  std::sort(s.stage_exps.begin(), s.stage_exps.end(), desc);
  std::sort(s.tree_exps.begin(), s.tree_exps.end(), desc);
  s.denom = b.denominator != 0 ? b.denominator : (family == GraphFamily::Outer ? 1 : 64);
  return s;
}

// Candidate basic-column model:
//   predicted(T) = k + trunc(stage(T)) + weight(T) * trunc(tree(T))
// where weight is the sum-tree depth log2(T) for the outer family and the
// tree part is absent for the inner family. k = start + end.
struct Candidate {
  std::vector<std::int64_t> stage;  // numerators over denom, aligned with shape
  std::vector<std::int64_t> tree;
  std::int64_t k = 0;
};

CostPoly to_poly(const std::vector<unsigned>& exps, const std::vector<std::int64_t>& nums,
                 std::int64_t denom) {
  CostPoly p;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (nums[i] != 0) p.set(exps[i], Rational(nums[i], denom));
  return p;
}

std::int64_t trunc_eval(const std::vector<unsigned>& exps, const std::vector<std::int64_t>& nums,
                        std::int64_t denom, std::uint32_t t) {
  __int128 acc = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    __int128 pw = 1;
    for (unsigned e = 0; e < exps[i]; ++e) pw *= t;
    acc += static_cast<__int128>(nums[i]) * pw;
  }
  return static_cast<std::int64_t>(acc / denom);
}

// Enumerates numerator grids in lexicographic order (vectors ascending, which
// realizes exponent-descending coefficient-tuple order) and feeds each
// complete candidate to `fn`; fn returns true to stop early. Prunes on the
// smallest tile: predictions grow monotonically with every numerator.
template <typename Fn>
bool enumerate(const Shape& shape, std::int64_t num_max, std::uint32_t min_tile,
               std::int64_t budget_at_min_tile, Fn&& fn) {
  const std::size_t ns = shape.stage_exps.size();
  const std::size_t nt = shape.tree_exps.size();
  std::vector<std::int64_t> stage(ns, 0), tree(nt, 0);

  std::function<bool(std::size_t)> rec_tree = [&](std::size_t ti) -> bool {
    if (ti == nt) return fn(stage, tree);
    for (std::int64_t v = 0; v <= num_max; ++v) {
      tree[ti] = v;
      const std::int64_t part = trunc_eval(shape.stage_exps, stage, shape.denom, min_tile) +
                                trunc_eval(shape.tree_exps, tree, shape.denom, min_tile);
      if (part > budget_at_min_tile) break;
      if (rec_tree(ti + 1)) return true;
    }
    tree[ti] = 0;
    return false;
  };
  std::function<bool(std::size_t)> rec_stage = [&](std::size_t si) -> bool {
    if (si == ns) return rec_tree(0);
    for (std::int64_t v = 0; v <= num_max; ++v) {
      stage[si] = v;
      if (trunc_eval(shape.stage_exps, stage, shape.denom, min_tile) > budget_at_min_tile) break;
      if (rec_stage(si + 1)) return true;
    }
    stage[si] = 0;
    return false;
  };
  return rec_stage(0);
}

}  // namespace

CalibrationResult calibrate(const ResultTable& target, GraphFamily family,
                            const SearchBounds& bounds) {
  const auto basic_it = target.columns.find(RunConfigKind::Basic);
  if (basic_it == target.columns.end() || basic_it->second.empty())
    throw Error(Errc::MissingBasic, "calibration needs a nonempty basic column");
  if (bounds.numerator_max < 0) throw Error(Errc::NoFit, "empty coefficient bounds");

  const Shape shape = resolve_shape(family, bounds);
  const std::vector<std::uint32_t>& tiles = target.tiles;
  const std::vector<SimTime>& basic = basic_it->second;
  for (std::uint32_t t : tiles) {
    if (t < 2) throw Error(Errc::ParseError, "tile counts must be >= 2");
    if (t > bounds.assumed_cus)
      throw Error(Errc::ParseError, "tile count exceeds the assumed CU count");
  }

  const std::uint32_t min_tile = *std::min_element(tiles.begin(), tiles.end());
  std::size_t min_idx = 0;
  for (std::size_t i = 0; i < tiles.size(); ++i)
    if (tiles[i] == min_tile) min_idx = i;
  const std::int64_t k_max = static_cast<std::int64_t>(bounds.start_max) + bounds.end_max;

  auto predict_parts = [&](const std::vector<std::int64_t>& stage,
                           const std::vector<std::int64_t>& tree, std::size_t i) {
    const std::int64_t sp = trunc_eval(shape.stage_exps, stage, shape.denom, tiles[i]);
    const std::int64_t tp = trunc_eval(shape.tree_exps, tree, shape.denom, tiles[i]);
    const std::int64_t w = family == GraphFamily::Outer ? log2u(tiles[i]) : 0;
    return sp + (family == GraphFamily::Outer ? w * tp : 0);
  };

  // --- exact fit: first hit in lexicographic order wins ---
  Candidate best;
  bool exact = false;
  {
    const std::int64_t budget = static_cast<std::int64_t>(basic[min_idx]);
    enumerate(shape, bounds.numerator_max, min_tile, budget,
              [&](const std::vector<std::int64_t>& stage, const std::vector<std::int64_t>& tree) {
                std::int64_t k = 0;
                for (std::size_t i = 0; i < tiles.size(); ++i) {
                  const std::int64_t ki =
                      static_cast<std::int64_t>(basic[i]) - predict_parts(stage, tree, i);
                  if (i == 0)
                    k = ki;
                  else if (ki != k)
                    return false;
                }
                if (k < 0 || k > k_max) return false;
                best = {stage, tree, k};
                exact = true;
                return true;
              });
  }

  // --- least-squares fallback over the same grid ---
  if (!exact) {
    long double best_sse = std::numeric_limits<long double>::max();
    bool any = false;
    // once the prediction exceeds every target even at the smallest tile,
    // growing a coefficient can only increase the error
    const std::int64_t budget =
        static_cast<std::int64_t>(*std::max_element(basic.begin(), basic.end())) + k_max;
    enumerate(shape, bounds.numerator_max, min_tile, budget,
              [&](const std::vector<std::int64_t>& stage, const std::vector<std::int64_t>& tree) {
                long double mean = 0;
                std::vector<std::int64_t> d(tiles.size());
                for (std::size_t i = 0; i < tiles.size(); ++i) {
                  d[i] = static_cast<std::int64_t>(basic[i]) - predict_parts(stage, tree, i);
                  mean += static_cast<long double>(d[i]);
                }
                mean /= static_cast<long double>(tiles.size());
                for (std::int64_t k :
                     {static_cast<std::int64_t>(std::floor(mean)),
                      static_cast<std::int64_t>(std::ceil(mean))}) {
                  k = std::clamp<std::int64_t>(k, 0, k_max);
                  long double sse = 0;
                  for (std::int64_t di : d) {
                    const long double r = static_cast<long double>(k - di);
                    sse += r * r;
                  }
                  if (sse < best_sse) {
                    best_sse = sse;
                    best = {stage, tree, k};
                    any = true;
                  }
                }
                return false;  // keep scanning
              });
    if (!any) throw Error(Errc::NoFit, "no candidate within the search bounds");
  }

  // --- assemble the profile: split k into start/end and the fitted
  // polynomials into per-kind costs ---
  DelayProfile profile;
  profile.family = family;
  profile.multipliers = default_multipliers();

  const CostPoly stage_poly = to_poly(shape.stage_exps, best.stage, shape.denom);
  const CostPoly tree_poly = to_poly(shape.tree_exps, best.tree, shape.denom);

  // contention-free pipelined cells: every codelet of the fully cascaded
  // graph fits on the machine at once
  std::vector<std::size_t> free_cells;
  const auto pip_it = target.columns.find(RunConfigKind::Pipelined);
  if (pip_it != target.columns.end()) {
    for (std::size_t i = 0; i < tiles.size(); ++i) {
      const std::uint64_t width = family == GraphFamily::Outer
                                      ? 3ull * tiles[i]          // convs + vmuls + sums + end
                                      : 2ull * tiles[i] + 2;     // convs + dots + end
      if (width <= bounds.assumed_cus) free_cells.push_back(i);
    }
  }

  std::int64_t start = -1;
  if (family == GraphFamily::Outer) {
    const CostPoly conv = poly_scale(stage_poly, Rational(1, 2));
    const CostPoly vmul = poly_sub(stage_poly, conv);
    // bottleneck of a fully overlapped run = the longest flagged codelet
    if (!free_cells.empty()) {
      for (std::int64_t s = std::min<std::int64_t>(best.k, bounds.start_max); s >= 0; --s) {
        if (best.k - s > static_cast<std::int64_t>(bounds.end_max)) break;
        bool all_match = true;
        for (std::size_t i : free_cells) {
          const std::int64_t bottleneck =
              std::max({static_cast<std::int64_t>(eval_cost(conv, tiles[i])),
                        static_cast<std::int64_t>(eval_cost(vmul, tiles[i])),
                        static_cast<std::int64_t>(eval_cost(tree_poly, tiles[i])),
                        best.k - s /* end runs after the cascade too */});
          if (s + bottleneck != static_cast<std::int64_t>(pip_it->second[i])) all_match = false;
        }
        if (all_match) {
          start = s;
          break;
        }
      }
    }
    if (start < 0) start = std::max<std::int64_t>(0, best.k - bounds.end_max);
    profile.kinds = {{"conv", conv}, {"vmul", vmul}, {"sum", tree_poly}};
  } else {
    // Split the chain into conv + dot. The dot stage is fitted to the
    // pipelined bottleneck (pipelined cell minus start) as the smallest
    // nonnegative-numerator polynomial over exponents 3..0; conv is the
    // remainder. Prefers the largest admissible start.
    CostPoly conv, dot;
    bool split_done = false;
    const std::vector<unsigned> dot_exps{3, 2, 1, 0};
    for (std::int64_t s = std::min<std::int64_t>(best.k, bounds.start_max);
         s >= std::max<std::int64_t>(0, best.k - bounds.end_max) && !split_done; --s) {
      std::vector<std::int64_t> want;
      bool feasible = !free_cells.empty();
      for (std::size_t i : free_cells) {
        const std::int64_t b = static_cast<std::int64_t>(pip_it->second[i]) - s;
        const std::int64_t chain = static_cast<std::int64_t>(eval_cost(stage_poly, tiles[i]));
        if (b < (chain + 1) / 2 || b > chain) feasible = false;
        want.push_back(b);
      }
      if (!feasible) continue;
      Shape dot_shape{dot_exps, {}, shape.denom};
      enumerate(dot_shape, bounds.numerator_max, min_tile,
                *std::max_element(want.begin(), want.end()),
                [&](const std::vector<std::int64_t>& nums, const std::vector<std::int64_t>&) {
                  for (std::size_t wi = 0; wi < free_cells.size(); ++wi) {
                    if (trunc_eval(dot_exps, nums, shape.denom, tiles[free_cells[wi]]) != want[wi])
                      return false;
                  }
                  dot = to_poly(dot_exps, nums, shape.denom);
                  conv = poly_sub(stage_poly, dot);
                  start = s;
                  split_done = true;
                  return true;
                });
    }
    if (!split_done) {
      start = std::max<std::int64_t>(0, best.k - bounds.end_max);
      conv = CostPoly{};
      dot = stage_poly;
    }
    profile.kinds = {{"conv", conv}, {"dot", dot}};
  }

  profile.start_cost = static_cast<SimTime>(start);
  profile.end_cost = static_cast<SimTime>(best.k - start);

  // --- residuals: simulate every target cell with the fitted profile ---
  CalibrationResult result;
  result.profile = profile;
  result.exact = exact;
  result.tiles = tiles;
  result.bounds = bounds;
  const GemmMethod method = family == GraphFamily::Outer ? GemmMethod::Outer : GemmMethod::Inner;
  for (const auto& [cfg, column] : target.columns) {
    std::vector<std::int64_t> res(tiles.size(), 0);
    for (std::size_t i = 0; i < tiles.size(); ++i) {
      const SimResult sim = run_cell(method, tiles[i], cfg, bounds.assumed_cus, profile);
      res[i] = static_cast<std::int64_t>(sim.makespan) - static_cast<std::int64_t>(column[i]);
    }
    result.residuals[cfg] = std::move(res);
  }
  if (exact) {
    for (std::int64_t r : result.residuals[RunConfigKind::Basic])
      if (r != 0) result.exact = false;  // model/engine disagreement; report honestly
  }
  return result;
}

}  // namespace camsim
