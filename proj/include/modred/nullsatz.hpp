#pragma once

// Certificates alpha * E^N = A * L + sum_j B_j F_j with L = U0 + U1 X1 + ... + Um Xm,
// found by exact linear algebra over Q. Variables of the identity are
// U0..Um followed by X1..Xm.

#include <string>
#include <unordered_map>
#include <vector>

#include "modred/eliminant.hpp"

namespace modred {

struct NullsatzCertificate {
  Integer alpha = 1;
  long N = 1;
  IntPoly cofactor_L;             // A
  std::vector<IntPoly> cofactors;  // B_j, one per generator
  long degree_used = 0;
};

struct NullsatzOptions {
  long degree_cap = -1;  // default deg E + 2 d
  long N_cap = 2;
  std::size_t max_unknowns = 4000;
};

/// L = U0 + U1 X1 + ... + Um Xm in 2m+1 variables.
inline IntPoly affine_linear_form(std::size_t m) {
  const std::size_t n = 2 * m + 1;
  IntPoly L = IntPoly::variable(n, 0);
  for (std::size_t i = 1; i <= m; ++i) L += IntPoly::variable(n, i) * IntPoly::variable(n, m + i);
  return L;
}

inline IntPoly lift_x(const IntPoly& f, std::size_t m) {
  std::vector<std::size_t> map(m);
  for (std::size_t i = 0; i < m; ++i) map[i] = m + 1 + i;
  return f.remap(2 * m + 1, map);
}

inline IntPoly lift_u(const IntPoly& e, std::size_t m) {
  std::vector<std::size_t> map(m + 1);
  for (std::size_t i = 0; i <= m; ++i) map[i] = i;
  return e.remap(2 * m + 1, map);
}

/// Expands both sides of the identity; true iff they agree.
inline bool verify_certificate(const std::vector<IntPoly>& sys, std::size_t m, const EliminantForm& E,
                               const NullsatzCertificate& c) {
  if (c.cofactors.size() != sys.size()) return false;
  IntPoly rhs = c.cofactor_L * affine_linear_form(m);
  for (std::size_t j = 0; j < sys.size(); ++j) rhs += c.cofactors[j] * lift_x(sys[j], m);
  const IntPoly lhs = lift_u(E.poly, m).pow(static_cast<unsigned>(c.N)).scaled(c.alpha);
  return lhs == rhs;
}

namespace detail {

inline std::vector<Exponents> monomials_upto(std::size_t n, long D) {
  std::vector<Exponents> out;
  for (long d = 0; d <= D; ++d) {
    auto part = monomials_of_degree(n, static_cast<std::uint32_t>(d));
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

inline Exponents join(const Exponents& u, const Exponents& x) {
  Exponents e(u.begin(), u.end());
  e.insert(e.end(), x.begin(), x.end());
  return e;
}

inline Integer denominator_lcm(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
  return l;
}

}  // namespace detail

/// Searches N = 1..N_cap and cofactor degree D' = deg(E^N)..degree_cap.
/// Cofactors are homogeneous in U: A of U-degree N T - 1, B_j of U-degree N T.
inline NullsatzCertificate find_certificate(const std::vector<IntPoly>& sys, std::size_t m, const EliminantForm& E,
                                            NullsatzOptions opt = {}) {
  if (E.poly.nvars() != m + 1) throw input_error("eliminant does not match the system dimension");
  if (sys.empty()) throw input_error("empty system");
  long d = 1;
  for (const auto& f : sys) {
    if (f.nvars() != m) throw input_error("polynomial has the wrong number of variables");
    if (!f.is_zero()) d = std::max<long>(d, f.degree());
  }
  if (opt.degree_cap < 0) opt.degree_cap = E.T + 2 * d;
  if (opt.degree_cap < E.T) throw input_error("degree cap below deg E");
  if (opt.N_cap < 1) throw input_error("N cap must be at least 1");

  const std::size_t n = 2 * m + 1;
  const IntPoly L = affine_linear_form(m);
  std::vector<IntPoly> F;
  for (const auto& f : sys) F.push_back(lift_x(f, m));
  const IntPoly Eu = lift_u(E.poly, m);

  for (long N = 1; N <= opt.N_cap; ++N) {
    const long uT = N * E.T;
    const IntPoly target = Eu.pow(static_cast<unsigned>(N));
    for (long Dp = std::max<long>(uT, 0); Dp <= opt.degree_cap; ++Dp) {
      // Unknown blocks: block 0 is A, block j+1 is B_j.
      struct Unknown {
        std::size_t block;
        Exponents mono;
      };
      std::vector<Unknown> unknowns;
      if (uT >= 1) {
        const auto us = detail::monomials_of_degree(m + 1, static_cast<std::uint32_t>(uT - 1));
        const auto xs = detail::monomials_upto(m, Dp - uT);
        for (const auto& u : us)
          for (const auto& x : xs) unknowns.push_back({0, detail::join(u, x)});
      }
      for (std::size_t j = 0; j < F.size(); ++j) {
        if (F[j].is_zero()) continue;
        const long xdeg = Dp - uT - sys[j].degree();
        if (xdeg < 0) continue;
        const auto us = detail::monomials_of_degree(m + 1, static_cast<std::uint32_t>(uT));
        const auto xs = detail::monomials_upto(m, xdeg);
        for (const auto& u : us)
          for (const auto& x : xs) unknowns.push_back({j + 1, detail::join(u, x)});
      }
      if (unknowns.empty()) continue;
      if (unknowns.size() > opt.max_unknowns)
        throw budget_exceeded("certificate linear system exceeds " + std::to_string(opt.max_unknowns) + " unknowns");

      std::unordered_map<Exponents, std::size_t, ExponentsHash> row_of;
      std::vector<std::vector<std::pair<std::size_t, Integer>>> columns(unknowns.size());
      auto row_index = [&](const Exponents& e) {
        auto [it, fresh] = row_of.emplace(e, row_of.size());
        return it->second;
      };
      for (std::size_t c = 0; c < unknowns.size(); ++c) {
        const auto& g = unknowns[c].block == 0 ? L : F[unknowns[c].block - 1];
        for (const auto& t : g.terms()) {
          Exponents e = t.exps;
          for (std::size_t k = 0; k < n; ++k) e[k] += unknowns[c].mono[k];
          columns[c].emplace_back(row_index(e), t.coeff);
        }
      }
      std::vector<std::pair<std::size_t, Integer>> rhs;
      for (const auto& t : target.terms()) rhs.emplace_back(row_index(t.exps), t.coeff);

      const std::size_t cols = unknowns.size();
      RatMatrix a(row_of.size(), std::vector<Rational>(cols + 1, 0));
      for (std::size_t c = 0; c < cols; ++c)
        for (const auto& [r, v] : columns[c]) a[r][c] += v;
      for (const auto& [r, v] : rhs) a[r][cols] = v;
      const auto pivots = rref(a);
      if (!pivots.empty() && pivots.back() == cols) continue;  // inconsistent

      std::vector<Rational> x(cols, 0);
      for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][cols];
      Integer alpha = detail::denominator_lcm(x);
      const auto basis = nullspace_from_rref(a, pivots, cols);
      if (!basis.empty() && basis.size() <= 6) {
        std::vector<int> t(basis.size(), -1);
        while (true) {
          std::vector<Rational> y = x;
          for (std::size_t b = 0; b < basis.size(); ++b)
            if (t[b] != 0)
              for (std::size_t c = 0; c < cols; ++c)
                if (sgn(basis[b][c]) != 0) y[c] += t[b] * basis[b][c];
          const Integer al = detail::denominator_lcm(y);
          if (al < alpha) {
            alpha = al;
            x = std::move(y);
          }
          std::size_t k = 0;
          while (k < t.size() && t[k] == 1) t[k++] = -1;
          if (k == t.size()) break;
          ++t[k];
        }
      }

      NullsatzCertificate cert;
      cert.alpha = alpha;
      cert.N = N;
      cert.degree_used = Dp;
      std::vector<std::vector<IntPoly::Term>> blocks(F.size() + 1);
      for (std::size_t c = 0; c < cols; ++c) {
        if (sgn(x[c]) == 0) continue;
        const Rational v = x[c] * alpha;
        if (v.get_den() != 1) throw invariant_violation("cofactor coefficient not integral after clearing");
        blocks[unknowns[c].block].push_back({unknowns[c].mono, Integer(v.get_num())});
      }
      cert.cofactor_L = IntPoly::from_terms(n, std::move(blocks[0]));
      for (std::size_t j = 0; j < F.size(); ++j) cert.cofactors.push_back(IntPoly::from_terms(n, std::move(blocks[j + 1])));
      if (!verify_certificate(sys, m, E, cert)) throw invariant_violation("certificate identity fails on expansion");
      return cert;
    }
  }
  throw input_error("no certificate with N <= " + std::to_string(opt.N_cap) + " and degree <= " +
                    std::to_string(opt.degree_cap));
}

inline Integer combined_modulus(const NullsatzCertificate& cert, const BetaCertificate& beta) {
  return cert.alpha * beta.beta;
}

}  // namespace modred
