#include "camsim/delay_model.hpp"

#include <cstdlib>
#include <filesystem>
#include <numeric>

#include "json_util.hpp"

namespace camsim {

SimTime eval_cost(const CostPoly& poly, std::uint32_t tiles) {
  if (tiles < 1) throw Error(Errc::BadTiles, "eval_cost needs tiles >= 1");
  std::int64_t common = 1;
  for (const auto& [exp, coeff] : poly.terms) {
    (void)exp;
    common = std::lcm(common, coeff.den);
  }
  __int128 numerator = 0;
  for (const auto& [exp, coeff] : poly.terms) {
    __int128 power = 1;
    for (unsigned i = 0; i < exp; ++i) power *= tiles;
    numerator += static_cast<__int128>(coeff.num) * (common / coeff.den) * power;
  }
  const __int128 value = numerator / common;  // truncates toward zero
  if (value < 0)
    throw Error(Errc::NegativeCost, "cost polynomial is negative at tiles=" + std::to_string(tiles));
  return static_cast<SimTime>(value);
}

CostPoly poly_sub(const CostPoly& a, const CostPoly& b) {
  CostPoly out = a;
  for (const auto& [exp, coeff] : b.terms) {
    auto it = out.terms.find(exp);
    if (it == out.terms.end())
      out.terms[exp] = Rational(0) - coeff;
    else
      it->second = it->second - coeff;
  }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second.num == 0 ? out.terms.erase(it) : std::next(it);
  return out;
}

CostPoly poly_scale(const CostPoly& a, const Rational& f) {
  CostPoly out;
  for (const auto& [exp, coeff] : a.terms) {
    const Rational scaled = coeff * f;
    if (scaled.num != 0) out.terms[exp] = scaled;
  }
  return out;
}

const char* family_name(GraphFamily f) { return f == GraphFamily::Outer ? "outer" : "inner"; }

GraphFamily family_from_string(const std::string& s) {
  if (s == "outer") return GraphFamily::Outer;
  if (s == "inner") return GraphFamily::Inner;
  throw Error(Errc::ParseError, "unknown family '" + s + "'");
}

Multipliers default_multipliers() {
  return {{"tpu-like", Rational(30)}, {"udp-like", Rational(10)}};
}

SimTime effective_duration(SimTime base, const ResourceClass& cls, bool chiplets_enabled,
                           const Multipliers& multipliers) {
  if (!chiplets_enabled || cls.is_conventional()) return base;
  const auto it = multipliers.find(cls.name);
  if (it == multipliers.end())
    throw Error(Errc::UnknownClass, "no speedup multiplier for class '" + cls.name + "'");
  if (base == 0) return 0;
  const Rational& m = it->second;
  const __int128 scaled = static_cast<__int128>(base) * m.den;
  return static_cast<SimTime>((scaled + m.num - 1) / m.num);  // ceiling, >= 1
}

DelayProfile paper_calibrated(GraphFamily family) {
  DelayProfile p;
  p.family = family;
  p.multipliers = default_multipliers();
  if (family == GraphFamily::Outer) {
    // basic column fit: start 3, end 2, conv+vmul combined 30T, sum 5T^2+1
    p.start_cost = 3;
    p.end_cost = 2;
    CostPoly conv, vmul, sum;
    conv.set(1, Rational(15));
    vmul.set(1, Rational(15));
    sum.set(2, Rational(5));
    sum.set(0, Rational(1));
    p.kinds = {{"conv", conv}, {"vmul", vmul}, {"sum", sum}};
  } else {
    // basic column fit: start 3, end 0, chain (25T^3 + T^2)/64; the dot stage
    // carries the pipelined-column bottleneck (15T^3 + T^2 + 64T + 64)/64 and
    // conv the remainder. The conv coefficients go negative below 4 tiles, so
    // this profile supports tiles >= 4.
    p.start_cost = 3;
    p.end_cost = 0;
    CostPoly conv, dot;
    dot.set(3, Rational(15, 64));
    dot.set(2, Rational(1, 64));
    dot.set(1, Rational(1));
    dot.set(0, Rational(1));
    conv.set(3, Rational(10, 64));
    conv.set(1, Rational(-1));
    conv.set(0, Rational(-1));
    p.kinds = {{"conv", conv}, {"dot", dot}};
  }
  return p;
}

using detail::json;

DelayProfile profile_from_json_text(const std::string& text) {
  const json j = detail::parse_text(text, "profile");
  detail::require_keys(j, {"family", "start", "end", "kinds", "multipliers"},
                       {"family", "start", "end", "kinds", "multipliers"}, "profile");
  DelayProfile p;
  p.family = family_from_string(j.at("family").get<std::string>());
  p.start_cost = detail::get_uint<SimTime>(j.at("start"), "profile start");
  p.end_cost = detail::get_uint<SimTime>(j.at("end"), "profile end");

  const json& kinds = j.at("kinds");
  if (!kinds.is_object()) throw Error(Errc::ParseError, "profile: kinds must be an object");
  for (const auto& [kind, jpoly] : kinds.items()) {
    if (!jpoly.is_object())
      throw Error(Errc::ParseError, "profile: polynomial for '" + kind + "' must be an object");
    CostPoly poly;
    for (const auto& [exp_s, coeff_s] : jpoly.items()) {
      if (exp_s.size() != 1 || exp_s[0] < '0' || exp_s[0] > '3')
        throw Error(Errc::ParseError, "profile: exponent key must be \"0\"..\"3\"");
      if (!coeff_s.is_string())
        throw Error(Errc::ParseError, "profile: coefficients are rational strings");
      poly.set(static_cast<unsigned>(exp_s[0] - '0'), Rational::parse(coeff_s.get<std::string>()));
    }
    p.kinds[kind] = std::move(poly);
  }

  p.multipliers.clear();
  const json& mult = j.at("multipliers");
  if (!mult.is_object()) throw Error(Errc::ParseError, "profile: multipliers must be an object");
  for (const auto& [cls, val] : mult.items()) {
    if (!val.is_string())
      throw Error(Errc::ParseError, "profile: multipliers are rational strings");
    const Rational m = Rational::parse(val.get<std::string>());
    if (cls == "conventional") {
      if (m != Rational(1))
        throw Error(Errc::ParseError, "profile: conventional multiplier must be exactly 1");
      continue;
    }
    if (m < Rational(1))
      throw Error(Errc::ParseError, "profile: multiplier for '" + cls + "' must be >= 1");
    p.multipliers[cls] = m;
  }
  return p;
}

std::string profile_to_json_text(const DelayProfile& p) {
  json kinds = json::object();
  for (const auto& [kind, poly] : p.kinds) {
    json jpoly = json::object();
    for (const auto& [exp, coeff] : poly.terms) jpoly[std::to_string(exp)] = coeff.str();
    kinds[kind] = std::move(jpoly);
  }
  json mult = json::object();
  for (const auto& [cls, m] : p.multipliers) mult[cls] = m.str();
  json j{{"family", family_name(p.family)},
         {"start", p.start_cost},
         {"end", p.end_cost},
         {"kinds", std::move(kinds)},
         {"multipliers", std::move(mult)}};
  return j.dump(2) + "\n";
}

DelayProfile load_profile(const std::string& path) {
  return profile_from_json_text(detail::read_file(path));
}

void save_profile(const DelayProfile& p, const std::string& path) {
  detail::write_file(path, profile_to_json_text(p));
}

DelayProfile resolve_profile(const std::string& name_or_path, GraphFamily wanted) {
  if (name_or_path == "paper-calibrated") return paper_calibrated(wanted);

  namespace fs = std::filesystem;
  std::string path = name_or_path;
  if (!fs::exists(path)) {
    if (const char* dir = std::getenv("CAMSIM_PROFILE_DIR")) {
      const fs::path base(dir);
      if (fs::exists(base / name_or_path))
        path = (base / name_or_path).string();
      else if (fs::exists(base / (name_or_path + ".json")))
        path = (base / (name_or_path + ".json")).string();
    }
  }
  DelayProfile p = load_profile(path);
  if (p.family != wanted)
    throw Error(Errc::FamilyMismatch, "profile '" + name_or_path + "' targets family " +
                                          family_name(p.family) + ", wanted " +
                                          family_name(wanted));
  return p;
}

}  // namespace camsim
