#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "camsim/delay_model.hpp"
#include "camsim/metrics.hpp"

namespace camsim {

/// Search space for calibration. Exponent sets and the coefficient
/// denominator default per family when unset:
///   outer: stage (conv+vmul combined) {1}, tree (sum) {2,0}, denominator 1
///   inner: stage (whole chain) {3,2}, no tree, denominator 64
struct SearchBounds {
  std::uint32_t start_max = 16;
  std::uint32_t end_max = 16;
  std::int64_t numerator_max = 64;
  std::uint32_t assumed_cus = 64;
  std::optional<std::vector<unsigned>> stage_exponents;
  std::optional<std::vector<unsigned>> tree_exponents;
  std::uint32_t denominator = 0;  // 0 -> family default
};

struct CalibrationResult {
  DelayProfile profile;
  bool exact = false;
  /// predicted - target, per target cell, aligned with `tiles`.
  std::vector<std::uint32_t> tiles;
  std::map<RunConfigKind, std::vector<std::int64_t>> residuals;
  SearchBounds bounds;
};

/// Fits the family's delay constants to the target table.
///
/// The Basic column drives the fit: the combined start+end constant and the
/// stage/tree coefficients are enumerated in exponent-descending
/// lexicographic order and the smallest exact fit wins; without an exact fit
/// the least-squares grid minimum is returned. Contention-free cells of the
/// Pipelined column, when present, pin the start/end split and (for the
/// inner family) the per-kind split of the chain cost; otherwise the split
/// defaults to the smallest admissible start. Residuals are reported for
/// every target cell by simulating the fitted profile.
///
/// Deterministic; NoFit only when the bounds admit no candidate at all.
CalibrationResult calibrate(const ResultTable& target, GraphFamily family,
                            const SearchBounds& bounds = {});

}  // namespace camsim
