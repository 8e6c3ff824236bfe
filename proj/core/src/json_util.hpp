#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "camsim/errors.hpp"

namespace camsim::detail {

using nlohmann::json;

inline void require_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::set<std::string>& required, const std::string& context) {
  if (!obj.is_object()) throw Error(Errc::ParseError, context + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (allowed.count(key) == 0)
      throw Error(Errc::ParseError, context + ": unknown field '" + key + "'");
  }
  for (const auto& key : required) {
    if (!obj.contains(key))
      throw Error(Errc::ParseError, context + ": missing field '" + key + "'");
  }
}

inline json parse_text(const std::string& text, const std::string& context) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, context + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(Errc::IoError, "read failed for '" + path + "'");
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(Errc::IoError, "write failed for '" + path + "'");
}

template <typename T>
T get_uint(const json& v, const std::string& context) {
  if (!v.is_number_unsigned())
    throw Error(Errc::ParseError, context + ": expected a nonnegative integer");
  return v.get<T>();
}

}  // namespace camsim::detail
