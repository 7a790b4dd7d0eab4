#pragma once

#include <gtest/gtest.h>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "modred/modred.hpp"
#include "rng.hpp"

namespace modred {

inline void PrintTo(const IntPoly& f, std::ostream* os) { *os << format_poly(f); }

}  // namespace modred

namespace modred::testing {

inline std::string fixture(const std::string& name) { return std::string(MODRED_FIXTURE_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SystemFile load_fixture(const std::string& name) { return parse_system(read_text(fixture(name))); }

/// Parses polynomials written in x, y, z (as many as m).
inline IntPoly P(const std::string& text, std::size_t m = 1) {
  static const char* names[] = {"x", "y", "z", "w"};
  std::string src = "vars";
  for (std::size_t i = 0; i < m; ++i) src += std::string(" ") + names[i];
  src += "\nF = " + text + "\n";
  return parse_system(src).definitions.at(0).num;
}

/// Parses a polynomial in u0..u{n-1}.
inline IntPoly PU(const std::string& text, std::size_t n) {
  std::string src = "vars";
  for (std::size_t i = 0; i < n; ++i) src += " u" + std::to_string(i);
  src += "\nE = " + text + "\n";
  return parse_system(src).definitions.at(0).num;
}

inline std::vector<IntPoly> Ps(std::initializer_list<const char*> texts, std::size_t m) {
  std::vector<IntPoly> out;
  for (auto t : texts) out.push_back(P(t, m));
  return out;
}

inline DynSystem dyn(const std::string& src) { return DynSystem::from_file(parse_system(src)); }

}  // namespace modred::testing
