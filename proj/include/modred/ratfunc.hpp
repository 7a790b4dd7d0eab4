#pragma once

// Rational functions F/G over the integers in canonical form: coprime
// numerator and denominator, joint content 1, denominator with positive
// graded-lex leading coefficient.

#include <vector>

#include "modred/polyalg.hpp"

namespace modred {

class RatFunc {
 public:
  RatFunc() = default;

  /// Canonical form of p / q.
  static RatFunc normalize(const IntPoly& p, const IntPoly& q) {
    if (q.is_zero()) throw input_error("zero denominator");
    if (p.nvars() != q.nvars()) throw input_error("variable-count mismatch");
    RatFunc r;
    if (p.is_zero()) {
      r.num_ = p;
      r.den_ = IntPoly::one(q.nvars());
      return r;
    }
    IntPoly a = p, b = q;
    if (!b.is_constant()) {
      const auto g = gcd(a, b);
      if (!g.is_constant()) {
        a = divide_exact(a, g);
        b = divide_exact(b, g);
      }
    }
    Integer c = modred::gcd(coeff_content(a), coeff_content(b));
    if (sgn(b.leading_coeff()) < 0) c = -c;
    if (c != 1) {
      a = a.divided_by_scalar(c);
      b = b.divided_by_scalar(c);
    }
    r.num_ = std::move(a);
    r.den_ = std::move(b);
    return r;
  }

  static RatFunc from_poly(const IntPoly& p) { return normalize(p, IntPoly::one(p.nvars())); }
  static RatFunc variable(std::size_t nvars, std::size_t var) { return from_poly(IntPoly::variable(nvars, var)); }

  const IntPoly& num() const { return num_; }
  const IntPoly& den() const { return den_; }
  std::size_t nvars() const { return num_.nvars(); }
  bool is_polynomial() const { return den_.is_constant() && den_.constant_value() == 1; }
  /// max(deg F, deg G).
  std::int64_t degree() const { return std::max(std::max<std::int64_t>(num_.degree(), 0), den_.degree()); }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

 private:
  IntPoly num_;
  IntPoly den_;
};

/// lcm of integer polynomials with positive leading coefficient, including
/// the integer contents.
inline IntPoly poly_lcm(const IntPoly& a, const IntPoly& b) {
  const Integer c = lcm(coeff_content(a), coeff_content(b));
  const auto pa = primitive_part(a), pb = primitive_part(b);
  IntPoly l = pa.is_constant() ? pb : pb.is_constant() ? pa : divide_exact(pa, gcd(pa, pb)) * pb;
  return primitive_part(l).scaled(c);
}

/// R(S_1, ..., S_m) renormalized. A zero denominator after substitution
/// raises pole_collapse.
inline RatFunc compose(const RatFunc& r, const std::vector<RatFunc>& s) {
  if (s.size() != r.nvars()) throw input_error("substitution count differs from variable count");
  if (s.empty()) return r;
  const std::size_t n = s[0].nvars();
  bool all_poly = true;
  for (const auto& x : s) {
    if (x.nvars() != n) throw input_error("substituted functions use different variable sets");
    all_poly = all_poly && x.is_polynomial();
  }
  if (all_poly) {
    std::vector<IntPoly> subs;
    for (const auto& x : s) subs.push_back(x.num());
    auto p = compose_poly(r.num(), subs);
    auto q = compose_poly(r.den(), subs);
    if (q.is_zero()) throw pole_collapse("denominator vanishes identically after substitution");
    return RatFunc::normalize(p, q);
  }
  IntPoly b = IntPoly::one(n);
  for (const auto& x : s) b = poly_lcm(b, x.den());
  std::vector<IntPoly> hs{b};
  for (const auto& x : s) hs.push_back(x.num() * divide_exact(b, x.den()));
  const auto D = r.degree();
  auto p = compose_poly(homogenize(r.num(), D), hs);
  auto q = compose_poly(homogenize(r.den(), D), hs);
  if (q.is_zero()) throw pole_collapse("denominator vanishes identically after substitution");
  return RatFunc::normalize(p, q);
}

}  // namespace modred
