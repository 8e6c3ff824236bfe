#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "camsim/graph.hpp"
#include "camsim/rational.hpp"

namespace camsim {

/// Cost polynomial in the tile count, exponents 0..3, exact rational
/// coefficients. Evaluation is exact integer arithmetic over the common
/// denominator, truncated toward zero.
struct CostPoly {
  std::map<unsigned, Rational> terms;  // exponent -> coefficient

  CostPoly() = default;
  explicit CostPoly(std::map<unsigned, Rational> t) : terms(std::move(t)) { check(); }

  void set(unsigned exp, Rational coeff) {
    if (exp > 3) throw Error(Errc::ParseError, "cost polynomial exponent > 3");
    terms[exp] = coeff;
  }
  void check() const {
    for (const auto& [e, c] : terms) {
      (void)c;
      if (e > 3) throw Error(Errc::ParseError, "cost polynomial exponent > 3");
    }
  }
  bool operator==(const CostPoly& o) const { return terms == o.terms; }
};

/// Evaluates the polynomial at a tile count >= 1. Throws NegativeCost when
/// the truncated value is negative.
SimTime eval_cost(const CostPoly& poly, std::uint32_t tiles);

/// poly - other, term by term.
CostPoly poly_sub(const CostPoly& a, const CostPoly& b);

/// poly scaled by a rational factor.
CostPoly poly_scale(const CostPoly& a, const Rational& f);

enum class GraphFamily { Outer, Inner };

const char* family_name(GraphFamily f);
GraphFamily family_from_string(const std::string& s);

using Multipliers = std::map<std::string, Rational>;  // chiplet name -> speedup

/// Default chiplet speedups: tpu-like 30x, udp-like 10x.
Multipliers default_multipliers();

/// Per-family delay profile: kind cost polynomials plus fixed start/end
/// costs and the chiplet speedup multipliers.
struct DelayProfile {
  GraphFamily family = GraphFamily::Outer;
  SimTime start_cost = 0;
  SimTime end_cost = 0;
  std::map<std::string, CostPoly> kinds;
  Multipliers multipliers = default_multipliers();

  const CostPoly& kind(const std::string& k) const {
    auto it = kinds.find(k);
    if (it == kinds.end()) throw Error(Errc::UnknownKind, "no cost for kind '" + k + "'");
    return it->second;
  }

  bool operator==(const DelayProfile& o) const {
    return family == o.family && start_cost == o.start_cost && end_cost == o.end_cost &&
           kinds == o.kinds && multipliers == o.multipliers;
  }
};

/// Accelerated duration: ceiling(base / multiplier) for chiplet classes when
/// chiplets are enabled (never 0 for base >= 1), base unchanged otherwise.
/// Throws UnknownClass for a chiplet class without a multiplier entry.
SimTime effective_duration(SimTime base, const ResourceClass& cls, bool chiplets_enabled,
                           const Multipliers& multipliers);

/// The shipped default profile reproducing the reference result tables.
DelayProfile paper_calibrated(GraphFamily family);

DelayProfile load_profile(const std::string& path);
void save_profile(const DelayProfile& p, const std::string& path);
DelayProfile profile_from_json_text(const std::string& text);
std::string profile_to_json_text(const DelayProfile& p);

/// Resolves "paper-calibrated" to the builtin profile for the wanted family,
/// otherwise treats the reference as a file path, searched relative to the
/// CAMSIM_PROFILE_DIR directory when not found directly. Throws
/// FamilyMismatch when a loaded profile targets the other family.
DelayProfile resolve_profile(const std::string& name_or_path, GraphFamily wanted);

}  // namespace camsim
