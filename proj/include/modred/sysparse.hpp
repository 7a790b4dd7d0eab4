#pragma once

// Reader and writer for system definition files:
//
//   # comment
//   vars x y
//   R1 = (x*y + 3)/(y - 2)
//   R2 = x
//
// A file with one definition per declared variable is a dynamical system;
// any other count is a list of variety equations. Index-list files hold a
// "N <horizon>" header followed by one index per line.

#include <cctype>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "modred/ratfunc.hpp"

namespace modred {

enum class FileKind { dynamical_system, variety, index_list };

struct Definition {
  std::string name;
  IntPoly num;
  std::optional<IntPoly> den;
};

struct SystemFile {
  std::vector<std::string> variables;
  std::vector<Definition> definitions;
  FileKind kind = FileKind::variety;

  std::size_t nvars() const { return variables.size(); }
};

struct IndexList {
  std::uint64_t N = 0;
  std::vector<std::uint64_t> indices;
};

namespace detail {

enum class Tok { ident, integer, plus, minus, star, caret, slash, lparen, rparen, equals, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int l0 = line, c0 = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), l0, c0});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && (src[j] == '.' || std::isalpha(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        throw parse_error("malformed number", line, col + static_cast<int>(j - i));
      out.push_back({Tok::integer, std::string(src.substr(i, j - i)), l0, c0});
      advance(j - i);
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '^': k = Tok::caret; break;
      case '/': k = Tok::slash; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case '=': k = Tok::equals; break;
      default: throw parse_error(std::string("unexpected character '") + c + "'", l0, c0);
    }
    out.push_back({k, std::string(1, c), l0, c0});
    advance(1);
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  SystemFile run() {
    SystemFile f;
    bool have_vars = false;
    std::set<std::string> def_names;
    while (peek().kind != Tok::end) {
      const auto& t = peek();
      if (t.kind == Tok::ident && t.text == "vars" && peek(1).kind != Tok::equals) {
        if (have_vars) throw parse_error("duplicate vars declaration", t.line, t.col);
        if (!f.definitions.empty()) throw parse_error("vars must precede definitions", t.line, t.col);
        have_vars = true;
        next();
        while (peek().kind == Tok::ident && peek(1).kind != Tok::equals) {
          const auto& v = next();
          if (v.text == "vars") throw parse_error("reserved word used as variable", v.line, v.col);
          for (const auto& w : f.variables)
            if (w == v.text) throw parse_error("duplicate variable '" + v.text + "'", v.line, v.col);
          f.variables.push_back(v.text);
        }
        if (f.variables.empty()) throw parse_error("vars needs at least one identifier", t.line, t.col);
        vars_ = &f.variables;
        continue;
      }
      if (t.kind != Tok::ident) throw parse_error("expected a definition", t.line, t.col);
      if (!have_vars) throw parse_error("definition before vars declaration", t.line, t.col);
      const auto name = next();
      for (const auto& v : f.variables)
        if (v == name.text) throw parse_error("definition name shadows a variable", name.line, name.col);
      if (!def_names.insert(name.text).second)
        throw parse_error("duplicate definition '" + name.text + "'", name.line, name.col);
      expect(Tok::equals, "expected '='");
      f.definitions.push_back(parse_rat(name.text));
      end_of_statement();
    }
    if (!have_vars) throw input_error("missing vars declaration");
    if (f.definitions.empty()) throw input_error("no definitions");
    f.kind = f.definitions.size() == f.variables.size() ? FileKind::dynamical_system : FileKind::variety;
    return f;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  void expect(Tok k, const char* msg) {
    const auto& t = peek();
    if (t.kind != k) throw parse_error(msg, t.line, t.col);
    next();
  }
  std::size_t n() const { return vars_->size(); }

  void end_of_statement() {
    const auto& t = peek();
    if (t.kind == Tok::end) return;
    if (t.kind == Tok::ident && (peek(1).kind == Tok::equals || t.text == "vars")) return;
    if (t.kind == Tok::slash) throw parse_error("division must have the form (expr)/(expr)", t.line, t.col);
    throw parse_error("unexpected token '" + t.text + "'", t.line, t.col);
  }

  Definition parse_rat(const std::string& name) {
    bool paren_only = false;
    auto num = parse_expr(&paren_only);
    Definition d{name, std::move(num), std::nullopt};
    if (peek().kind == Tok::slash) {
      const auto& s = peek();
      if (!paren_only) throw parse_error("division must have the form (expr)/(expr)", s.line, s.col);
      next();
      if (peek().kind != Tok::lparen) throw parse_error("denominator must be parenthesized", peek().line, peek().col);
      next();
      auto den = parse_expr(nullptr);
      expect(Tok::rparen, "expected ')'");
      if (den.is_zero()) throw parse_error("zero denominator", s.line, s.col);
      d.den = std::move(den);
    }
    return d;
  }

  // expr := ["-"] term (("+"|"-") term)*
  IntPoly parse_expr(bool* paren_only) {
    IntPoly acc(n());
    bool neg = false;
    std::size_t nterms = 0;
    if (peek().kind == Tok::minus) {
      neg = true;
      next();
    }
    bool single_paren = false;
    acc = parse_term(&single_paren);
    if (neg) acc = -acc;
    ++nterms;
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool sub = next().kind == Tok::minus;
      auto t = parse_term(nullptr);
      acc = sub ? acc - t : acc + t;
      ++nterms;
    }
    if (paren_only) *paren_only = !neg && nterms == 1 && single_paren;
    return acc;
  }

  IntPoly parse_term(bool* single_paren) {
    std::size_t nfactors = 1;
    bool paren = false;
    auto acc = parse_factor(&paren);
    while (peek().kind == Tok::star) {
      next();
      acc = acc * parse_factor(nullptr);
      ++nfactors;
    }
    if (single_paren) *single_paren = paren && nfactors == 1;
    return acc;
  }

  IntPoly parse_factor(bool* paren) {
    bool was_paren = false;
    auto base = parse_atom(&was_paren);
    if (peek().kind == Tok::caret) {
      next();
      const auto& t = peek();
      if (t.kind != Tok::integer) throw parse_error("expected exponent", t.line, t.col);
      next();
      if (t.text.size() > 10 || std::stoull(t.text) > 2147483647ULL)
        throw parse_error("exponent exceeds 2^31-1", t.line, t.col);
      const auto e = std::stoul(t.text);
      base = base.pow(e);
      was_paren = false;
    }
    if (paren) *paren = was_paren;
    return base;
  }

  IntPoly parse_atom(bool* paren) {
    const auto& t = peek();
    switch (t.kind) {
      case Tok::integer: {
        next();
        return IntPoly::constant(n(), Integer(t.text));
      }
      case Tok::ident: {
        if (peek(1).kind == Tok::equals) throw parse_error("unexpected definition", t.line, t.col);
        next();
        for (std::size_t i = 0; i < n(); ++i)
          if ((*vars_)[i] == t.text) return IntPoly::variable(n(), i);
        throw parse_error("undeclared identifier '" + t.text + "'", t.line, t.col);
      }
      case Tok::lparen: {
        next();
        auto e = parse_expr(nullptr);
        if (peek().kind == Tok::slash)
          throw parse_error("division is only allowed at the top level", peek().line, peek().col);
        expect(Tok::rparen, "expected ')'");
        if (paren) *paren = true;
        return e;
      }
      default:
        throw parse_error(t.kind == Tok::end ? "unexpected end of input" : "unexpected token '" + t.text + "'",
                          t.line, t.col);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::vector<std::string>* vars_ = nullptr;
};

}  // namespace detail

inline SystemFile parse_system(std::string_view text) { return detail::Parser(text).run(); }

/// Canonical text of a polynomial: graded-lex order, explicit signs.
inline std::string format_poly(const IntPoly& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  if (names.size() != f.nvars()) throw input_error("name count differs from variable count");
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    const bool neg = sgn(t.coeff) < 0;
    const Integer a = abs(t.coeff);
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      if (!t.exps[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
    }
    if (mono.empty())
      out += a.get_str();
    else if (a == 1)
      out += mono;
    else
      out += a.get_str() + "*" + mono;
  }
  return out;
}

/// Default variable names x1..xn.
inline std::vector<std::string> default_names(std::size_t n, const std::string& stem = "x") {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(stem + std::to_string(i + 1));
  return v;
}

inline std::string format_poly(const IntPoly& f) { return format_poly(f, default_names(f.nvars())); }

inline std::string format_ratfunc(const RatFunc& r, const std::vector<std::string>& names) {
  if (r.is_polynomial()) return format_poly(r.num(), names);
  return "(" + format_poly(r.num(), names) + ")/(" + format_poly(r.den(), names) + ")";
}

inline std::string format_system(const SystemFile& f) {
  std::string out = "vars";
  for (const auto& v : f.variables) out += " " + v;
  out += "\n";
  for (const auto& d : f.definitions) {
    out += d.name + " = ";
    if (d.den)
      out += "(" + format_poly(d.num, f.variables) + ")/(" + format_poly(*d.den, f.variables) + ")";
    else
      out += format_poly(d.num, f.variables);
    out += "\n";
  }
  return out;
}

/// Builds a system file from rational functions with names R1..Rm.
inline SystemFile make_system_file(const std::vector<std::string>& vars, const std::vector<RatFunc>& fs) {
  SystemFile f;
  f.variables = vars;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    Definition d{"R" + std::to_string(i + 1), fs[i].num(), std::nullopt};
    if (!fs[i].is_polynomial()) d.den = fs[i].den();
    f.definitions.push_back(std::move(d));
  }
  f.kind = fs.size() == vars.size() ? FileKind::dynamical_system : FileKind::variety;
  return f;
}

inline SystemFile make_variety_file(const std::vector<std::string>& vars, const std::vector<IntPoly>& ps) {
  SystemFile f;
  f.variables = vars;
  for (std::size_t i = 0; i < ps.size(); ++i) f.definitions.push_back({"P" + std::to_string(i + 1), ps[i], std::nullopt});
  f.kind = FileKind::variety;
  return f;
}

/// The definitions as normalized rational functions; requires one per variable.
inline std::vector<RatFunc> as_rational_maps(const SystemFile& f) {
  if (f.definitions.size() != f.variables.size())
    throw input_error("a dynamical system needs exactly one definition per variable");
  std::vector<RatFunc> out;
  for (const auto& d : f.definitions)
    out.push_back(d.den ? RatFunc::normalize(d.num, *d.den) : RatFunc::from_poly(d.num));
  return out;
}

/// The definitions as polynomial equations; division is rejected.
inline std::vector<IntPoly> as_polynomials(const SystemFile& f) {
  std::vector<IntPoly> out;
  for (const auto& d : f.definitions) {
    if (d.den) throw input_error("definition '" + d.name + "' is not a polynomial");
    out.push_back(d.num);
  }
  return out;
}

inline IndexList parse_index_list(std::string_view text) {
  IndexList out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string a;
    if (!(ls >> a)) continue;
    if (!have_header) {
      std::string b;
      if (a != "N" || !(ls >> b)) throw parse_error("expected header 'N <horizon>'", lineno, 1);
      try {
        std::size_t used = 0;
        out.N = std::stoull(b, &used);
        if (used != b.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw parse_error("bad horizon", lineno, 3);
      }
      have_header = true;
      continue;
    }
    std::uint64_t v;
    try {
      std::size_t used = 0;
      if (a[0] == '-') throw std::invalid_argument("negative");
      v = std::stoull(a, &used);
      if (used != a.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw parse_error("bad index '" + a + "'", lineno, 1);
    }
    std::string extra;
    if (ls >> extra) throw parse_error("one index per line", lineno, 1);
    if (v >= out.N) throw parse_error("index outside [0, N)", lineno, 1);
    out.indices.push_back(v);
  }
  if (!have_header) throw input_error("empty index list");
  std::sort(out.indices.begin(), out.indices.end());
  if (std::adjacent_find(out.indices.begin(), out.indices.end()) != out.indices.end())
    throw input_error("duplicate index");
  return out;
}

inline std::string format_index_list(const IndexList& l) {
  std::string out = "N " + std::to_string(l.N) + "\n";
  for (auto v : l.indices) out += std::to_string(v) + "\n";
  return out;
}

}  // namespace modred
