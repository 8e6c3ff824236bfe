#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "camsim/errors.hpp"

namespace camsim {

/// Exact rational with int64 numerator and positive denominator.
/// Magnitudes stay tiny here (cost coefficients, speedup multipliers),
/// so plain int64 with 128-bit intermediates is plenty.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw Error(Errc::ParseError, "rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_integer() const { return den == 1; }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
  }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
  Rational operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
  Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }

  /// Parses "n" or "n/d".
  static Rational parse(const std::string& s);

  /// "n" when integral, else "n/d".
  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

inline Rational Rational::parse(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const std::int64_t n = std::stoll(s, &used);
      if (used != s.size()) throw Error(Errc::ParseError, "bad rational '" + s + "'");
      return Rational(n);
    }
    const std::int64_t n = std::stoll(s.substr(0, slash), &used);
    if (used != slash) throw Error(Errc::ParseError, "bad rational '" + s + "'");
    const std::string dpart = s.substr(slash + 1);
    const std::int64_t d = std::stoll(dpart, &used);
    if (used != dpart.size()) throw Error(Errc::ParseError, "bad rational '" + s + "'");
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    throw Error(Errc::ParseError, "bad rational '" + s + "'");
  } catch (const std::out_of_range&) {
    throw Error(Errc::ParseError, "rational out of range '" + s + "'");
  }
}

}  // namespace camsim
