#pragma once

// JSON encoding of library results for the modred command line tool.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "modred/modred.hpp"

namespace modred::report {

using nlohmann::ordered_json;

inline ordered_json integer(const Integer& a) {
  if (a.fits_slong_p()) return a.get_si();
  return a.get_str();
}

inline ordered_json real(const Real& x) {
  ordered_json j;
  j["value"] = x.convert_to<double>();
  j["decimal"] = x.str(20, std::ios_base::fmtflags(0));
  return j;
}

inline ordered_json poly(const IntPoly& f, const std::vector<std::string>& names) { return format_poly(f, names); }

inline ordered_json point(const FqTower& F, const FqPoint& pt) {
  ordered_json a = ordered_json::array();
  for (const auto& x : pt) a.push_back(F.to_string(x));
  return a;
}

inline ordered_json qpoint(const QPoint& pt) {
  ordered_json a = ordered_json::array();
  for (const auto& x : pt) a.push_back(x.get_str());
  return a;
}

inline ordered_json indices(const IndexList& l) {
  ordered_json j;
  j["N"] = l.N;
  j["indices"] = l.indices;
  return j;
}

/// 64-bit FNV-1a, hex.
inline std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace modred::report
