#pragma once

// Division, gcd, resultants, squarefree parts, substitution and
// homogenization for Poly<Ring>. The gcd and resultant follow the
// subresultant polynomial remainder sequence on one main variable, with
// coefficients living in the polynomial ring of the remaining variables.

#include <optional>
#include <vector>

#include "modred/poly.hpp"

namespace modred {

/// Dense representation in one variable: coefficient k multiplies var^k.
template <class Ring>
using UniView = std::vector<Poly<Ring>>;

namespace detail {

template <class Ring>
void trim(UniView<Ring>& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

template <class Ring>
std::int64_t udeg(const UniView<Ring>& a) {
  return a.empty() ? kZeroDegree : static_cast<std::int64_t>(a.size()) - 1;
}

}  // namespace detail

/// Exact division A / B, or nullopt if B does not divide A.
template <class Ring>
std::optional<Poly<Ring>> try_divide(const Poly<Ring>& a, const Poly<Ring>& b) {
  if (b.is_zero()) throw invariant_violation("division by zero polynomial");
  const Ring& R = a.ring();
  const std::size_t n = a.nvars();
  if (b.is_constant()) {
    const auto& c = b.leading_coeff();
    std::vector<typename Poly<Ring>::Term> out;
    for (const auto& t : a.terms()) {
      if (!R.divides(c, t.coeff)) return std::nullopt;
      out.push_back({t.exps, R.divexact(t.coeff, c)});
    }
    return Poly<Ring>::from_terms(n, std::move(out), R);
  }
  const auto& lb = b.leading_term();
  std::vector<typename Poly<Ring>::Term> quot;
  Poly<Ring> rem = a;
  while (!rem.is_zero()) {
    const auto& lr = rem.leading_term();
    Exponents e(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (lr.exps[i] < lb.exps[i]) return std::nullopt;
      e[i] = lr.exps[i] - lb.exps[i];
    }
    if (!R.divides(lb.coeff, lr.coeff)) return std::nullopt;
    auto c = R.divexact(lr.coeff, lb.coeff);
    rem = rem - b.shifted(e).scaled(c);
    quot.push_back({std::move(e), std::move(c)});
  }
  return Poly<Ring>::from_terms(n, std::move(quot), R);
}

template <class Ring>
Poly<Ring> divide_exact(const Poly<Ring>& a, const Poly<Ring>& b) {
  auto q = try_divide(a, b);
  if (!q) throw invariant_violation("inexact polynomial division");
  return std::move(*q);
}

template <class Ring>
UniView<Ring> uni_view(const Poly<Ring>& f, std::size_t var) {
  return f.to_univariate(var);
}

template <class Ring>
Poly<Ring> from_view(const UniView<Ring>& v, std::size_t var, std::size_t nvars, const Ring& ring) {
  return Poly<Ring>::from_univariate(v, var, nvars, ring);
}

/// Pseudo-remainder lc(B)^(deg A - deg B + 1) * A mod B in the given variable.
template <class Ring>
UniView<Ring> prem_view(UniView<Ring> a, const UniView<Ring>& b) {
  detail::trim(a);
  const auto db = detail::udeg(b);
  if (db < 0) throw invariant_violation("pseudo-remainder by zero");
  if (detail::udeg(a) < db) return a;
  const auto lb = b.back();
  std::int64_t e = detail::udeg(a) - db + 1;
  while (detail::udeg(a) >= db) {
    const auto shift = static_cast<std::size_t>(detail::udeg(a) - db);
    const auto lr = a.back();
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= lr * b[i];
    detail::trim(a);
    --e;
  }
  if (e > 0) {
    const auto f = lb.pow(static_cast<unsigned long>(e));
    for (auto& c : a) c = c * f;
  }
  return a;
}

template <class Ring>
Poly<Ring> prem(const Poly<Ring>& a, const Poly<Ring>& b, std::size_t var) {
  return from_view(prem_view(uni_view(a, var), uni_view(b, var)), var, a.nvars(), a.ring());
}

/// Resultant eliminating `var`. If one input is free of `var` the result is
/// that input raised to the other's degree; two var-free inputs are rejected.
template <class Ring>
Poly<Ring> resultant(const Poly<Ring>& f, const Poly<Ring>& g, std::size_t var) {
  const Ring& R = f.ring();
  const std::size_t n = f.nvars();
  if (f.is_zero() || g.is_zero()) return Poly<Ring>(n, R);
  auto A = uni_view(f, var);
  auto B = uni_view(g, var);
  auto da = detail::udeg(A), db = detail::udeg(B);
  if (da == 0 && db == 0) throw input_error("resultant of two polynomials constant in the variable");
  if (db == 0) return B[0].pow(static_cast<unsigned long>(da));
  if (da == 0) return A[0].pow(static_cast<unsigned long>(db));

  int s = 1;
  if (da < db) {
    std::swap(A, B);
    std::swap(da, db);
    if ((da & 1) && (db & 1)) s = -1;
  }
  auto g_ = Poly<Ring>::one(n, R);
  auto h = Poly<Ring>::one(n, R);
  for (;;) {
    const auto delta = da - db;
    if ((da & 1) && (db & 1)) s = -s;
    auto Rm = prem_view(A, B);
    A = std::move(B);
    const auto divisor = g_ * h.pow(static_cast<unsigned long>(delta));
    B.clear();
    for (const auto& c : Rm) B.push_back(divide_exact(c, divisor));
    detail::trim(B);
    g_ = A.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g_;
    } else {
      h = divide_exact(g_.pow(static_cast<unsigned long>(delta)), h.pow(static_cast<unsigned long>(delta - 1)));
    }
    da = detail::udeg(A);
    db = detail::udeg(B);
    if (db < 0) return Poly<Ring>(n, R);
    if (db == 0) break;
  }
  // B is a nonzero constant in var.
  Poly<Ring> res;
  if (da == 1)
    res = B[0];
  else
    res = divide_exact(B[0].pow(static_cast<unsigned long>(da)), h.pow(static_cast<unsigned long>(da - 1)));
  return s < 0 ? -res : res;
}

/// gcd of all coefficients (for fields: 1 unless zero).
template <class Ring>
typename Ring::value_type coeff_content(const Poly<Ring>& f) {
  const Ring& R = f.ring();
  auto c = R.zero();
  for (const auto& t : f.terms()) {
    c = R.gcd(c, t.coeff);
    if (R.is_one(c)) break;
  }
  return c;
}

/// Divides by the coefficient content and fixes the sign (or makes monic over
/// a field) so the graded-lex leading coefficient is normalized.
template <class Ring>
Poly<Ring> normalize_unit(const Poly<Ring>& f) {
  if (f.is_zero()) return f;
  const Ring& R = f.ring();
  if constexpr (Ring::is_field) {
    return f.scaled(R.inv(f.leading_coeff()));
  } else {
    auto c = coeff_content(f);
    if (R.unit_of(f.leading_coeff()) != R.one()) c = R.neg(c);
    return R.is_one(c) ? f : f.divided_by_scalar(c);
  }
}

/// Only fixes the sign / monic normalization, keeping integer content.
template <class Ring>
Poly<Ring> normalize_unit_sign(const Poly<Ring>& f) {
  if (f.is_zero()) return f;
  const Ring& R = f.ring();
  if constexpr (Ring::is_field) {
    return f.scaled(R.inv(f.leading_coeff()));
  } else {
    return R.unit_of(f.leading_coeff()) == R.one() ? f : -f;
  }
}

template <class Ring>
Poly<Ring> gcd_full(const Poly<Ring>& f, const Poly<Ring>& g);

/// Content of f viewed as a polynomial in `var`: gcd of its coefficients.
template <class Ring>
Poly<Ring> content_in(const Poly<Ring>& f, std::size_t var) {
  auto cs = uni_view(f, var);
  Poly<Ring> c(f.nvars(), f.ring());
  for (const auto& x : cs) {
    if (x.is_zero()) continue;
    c = gcd_full(c, x);
    if (c.is_constant() && c.ring().is_one(c.constant_value())) break;
  }
  return c;
}

namespace detail {

template <class Ring>
Poly<Ring> const_gcd(const Poly<Ring>& f, const Poly<Ring>& g) {
  const Ring& R = f.ring();
  auto c = R.gcd(coeff_content(f), coeff_content(g));
  return Poly<Ring>::constant(f.nvars(), c, R);
}

template <class Ring>
std::optional<std::size_t> first_var(const Poly<Ring>& f) {
  for (std::size_t v = 0; v < f.nvars(); ++v)
    if (f.uses_var(v)) return v;
  return std::nullopt;
}

}  // namespace detail

/// Greatest common divisor including the coefficient content, normalized to
/// a positive (or, over a field, unit) leading coefficient.
template <class Ring>
Poly<Ring> gcd_full(const Poly<Ring>& f, const Poly<Ring>& g) {
  if (f.is_zero()) return normalize_unit_sign(g);
  if (g.is_zero()) return normalize_unit_sign(f);
  auto vf = detail::first_var(f), vg = detail::first_var(g);
  if (!vf && !vg) return detail::const_gcd(f, g);
  std::size_t var;
  if (vf && vg) {
    var = std::min(*vf, *vg);
  } else {
    var = vf ? *vf : *vg;
  }
  const bool uf = f.uses_var(var), ug = g.uses_var(var);
  if (!uf) return gcd_full(f, content_in(g, var));
  if (!ug) return gcd_full(content_in(f, var), g);

  const auto cf = content_in(f, var), cg = content_in(g, var);
  const auto d = gcd_full(cf, cg);
  auto A = uni_view(divide_exact(f, cf), var);
  auto B = uni_view(divide_exact(g, cg), var);
  if (A.size() < B.size()) std::swap(A, B);
  const std::size_t n = f.nvars();
  const Ring& R = f.ring();
  auto g_ = Poly<Ring>::one(n, R);
  auto h = Poly<Ring>::one(n, R);
  for (;;) {
    const auto delta = detail::udeg(A) - detail::udeg(B);
    auto Rm = prem_view(A, B);
    if (Rm.empty()) break;
    if (detail::udeg(Rm) == 0) {
      B = UniView<Ring>{Poly<Ring>::one(n, R)};
      break;
    }
    A = std::move(B);
    const auto divisor = g_ * h.pow(static_cast<unsigned long>(delta));
    B.clear();
    for (const auto& c : Rm) B.push_back(divide_exact(c, divisor));
    g_ = A.back();
    if (delta == 1) {
      h = g_;
    } else if (delta > 1) {
      h = divide_exact(g_.pow(static_cast<unsigned long>(delta)), h.pow(static_cast<unsigned long>(delta - 1)));
    }
  }
  auto Bp = from_view(B, var, n, R);
  Bp = divide_exact(Bp, content_in(Bp, var));
  return normalize_unit_sign(d * Bp);
}

/// Primitive gcd with positive leading coefficient.
template <class Ring>
Poly<Ring> gcd(const Poly<Ring>& f, const Poly<Ring>& g) {
  if (f.is_zero() && g.is_zero()) throw input_error("gcd of two zero polynomials");
  return normalize_unit(gcd_full(f, g));
}

/// Integer content removed, leading coefficient positive.
template <class Ring>
Poly<Ring> primitive_part(const Poly<Ring>& f) {
  return normalize_unit(f);
}

/// Primitive F / gcd(F, dF/dvar): the same roots in `var`, each simple.
template <class Ring>
Poly<Ring> squarefree_part(const Poly<Ring>& f, std::size_t var) {
  if (f.is_zero() || f.degree_in(var) <= 0) throw input_error("squarefree part needs positive degree in the variable");
  const auto df = f.derivative(var);
  if (df.is_zero()) throw input_error("derivative vanishes identically");
  const auto g = gcd(f, df);
  return primitive_part(divide_exact(f, g));
}

/// Substitutes polynomials (all in a common variable set) for the variables of f.
template <class Ring>
Poly<Ring> compose_poly(const Poly<Ring>& f, const std::vector<Poly<Ring>>& subs) {
  if (subs.size() != f.nvars()) throw input_error("substitution count differs from variable count");
  if (subs.empty()) return f;
  const std::size_t n = subs[0].nvars();
  const Ring& R = f.ring();
  std::vector<std::vector<Poly<Ring>>> powers(subs.size(), std::vector<Poly<Ring>>{Poly<Ring>::one(n, R)});
  auto power = [&](std::size_t i, std::uint32_t e) -> const Poly<Ring>& {
    auto& pw = powers[i];
    while (pw.size() <= e) pw.push_back(pw.back() * subs[i]);
    return pw[e];
  };
  Poly<Ring> acc(n, R);
  for (const auto& t : f.terms()) {
    auto term = Poly<Ring>::constant(n, t.coeff, R);
    for (std::size_t i = 0; i < f.nvars(); ++i)
      if (t.exps[i]) term = term * power(i, t.exps[i]);
    acc += term;
  }
  return acc;
}

/// Homogenizes to degree `deg` (default: total degree) with a new variable Z0
/// at index 0; old variable i moves to index i+1.
template <class Ring>
Poly<Ring> homogenize(const Poly<Ring>& f, std::optional<std::int64_t> deg = std::nullopt) {
  const std::size_t n = f.nvars();
  const std::int64_t D = deg ? *deg : std::max<std::int64_t>(f.degree(), 0);
  if (!f.is_zero() && f.degree() > D) throw input_error("homogenization degree below polynomial degree");
  std::vector<typename Poly<Ring>::Term> out;
  for (const auto& t : f.terms()) {
    Exponents e(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) e[i + 1] = t.exps[i];
    e[0] = static_cast<std::uint32_t>(D - static_cast<std::int64_t>(exponent_sum(t.exps)));
    out.push_back({std::move(e), t.coeff});
  }
  return Poly<Ring>::from_terms(n + 1, std::move(out), f.ring());
}

/// Sets Z0 = 1 and drops it.
template <class Ring>
Poly<Ring> dehomogenize(const Poly<Ring>& f) {
  if (f.nvars() == 0) throw input_error("nothing to dehomogenize");
  std::vector<typename Poly<Ring>::Term> out;
  for (const auto& t : f.terms()) out.push_back({Exponents(t.exps.begin() + 1, t.exps.end()), t.coeff});
  return Poly<Ring>::from_terms(f.nvars() - 1, std::move(out), f.ring());
}

/// Largest absolute coefficient of an integer polynomial.
inline Integer max_abs_coeff(const IntPoly& f) {
  Integer m = 0;
  for (const auto& t : f.terms())
    if (abs(t.coeff) > m) m = abs(t.coeff);
  return m;
}

struct Height {
  Integer max_coeff;
  double log_value;
};

/// Logarithmic height: log of the largest absolute coefficient.
inline Height height(const IntPoly& f) {
  if (f.is_zero()) throw input_error("height of zero polynomial");
  auto m = max_abs_coeff(f);
  return {m, log_abs(m)};
}

}  // namespace modred
