#pragma once

// Eliminants E_V in U0..Um of zero-dimensional systems: a primitive integer
// polynomial whose linear factors U0 + xi_1 U1 + ... + xi_m Um run over the
// solutions xi. Computed in closed form for one variable and as the
// squarefree part of the u-resultant of (F_1^h, ..., F_m^h, U0 Z0 + ... + Um Zm)
// otherwise. Also the squarefreeness certificate beta.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "modred/linalg.hpp"
#include "modred/points.hpp"

namespace modred {

enum class EliminantMethod { univariate, macaulay, point_product };

inline const char* to_string(EliminantMethod m) {
  switch (m) {
    case EliminantMethod::univariate: return "univariate-closed-form";
    case EliminantMethod::macaulay: return "macaulay";
    case EliminantMethod::point_product: return "point-product";
  }
  return "?";
}

struct EliminantForm {
  IntPoly poly;  // variables U0..Um
  long T = 0;
  EliminantMethod method = EliminantMethod::univariate;
  std::vector<std::string> notes;

  std::size_t m() const { return poly.nvars() - 1; }
};

struct BetaCertificate {
  Integer beta0;
  IntPoly delta;
  Integer beta;
};

/// Checks the structural invariants: primitive, homogeneous of degree T,
/// degree T in U0.
inline void check_eliminant(const EliminantForm& E) {
  const auto& f = E.poly;
  if (f.is_zero()) throw invariant_violation("eliminant is zero");
  if (E.T == 0) {
    if (!(f.is_constant() && f.constant_value() == 1)) throw invariant_violation("empty eliminant must be 1");
    return;
  }
  if (coeff_content(f) != 1 || sgn(f.leading_coeff()) < 0) throw invariant_violation("eliminant not primitive");
  if (!f.is_homogeneous() || f.degree() != E.T) throw invariant_violation("eliminant not homogeneous of degree T");
  if (f.degree_in(0) != E.T) throw invariant_violation("eliminant U0-degree differs from T");
}

/// Closed form for m = 1: the primitive polynomial with roots U0 = -xi U1.
inline EliminantForm eliminant_univariate(const IntPoly& F) {
  if (F.nvars() != 1) throw input_error("univariate eliminant needs a one-variable polynomial");
  if (F.is_zero()) throw input_error("eliminant of the zero polynomial");
  EliminantForm out;
  out.method = EliminantMethod::univariate;
  if (F.degree() <= 0) {
    out.T = 0;
    out.poly = IntPoly::one(2);
    return out;
  }
  const auto Fs = squarefree_part(F, 0);
  const long T = static_cast<long>(Fs.degree());
  std::vector<IntPoly::Term> terms;
  for (const auto& t : Fs.terms()) {
    const long k = t.exps[0];
    Exponents e{static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(T - k)};
    Integer c = t.coeff;
    if ((k + T) % 2) c = -c;  // (-U0)^k times (-1)^T
    terms.push_back({e, c});
  }
  out.poly = primitive_part(IntPoly::from_terms(2, std::move(terms)));
  out.T = T;
  check_eliminant(out);
  return out;
}

/// Primitive part of prod_j (den_j U0 + sum_i num_{j,i} U_i) over rational points.
inline EliminantForm eliminant_from_points(const std::vector<std::vector<Rational>>& points, std::size_t m) {
  EliminantForm out;
  out.method = EliminantMethod::point_product;
  IntPoly acc = IntPoly::one(m + 1);
  for (const auto& pt : points) {
    if (pt.size() != m) throw input_error("point dimension mismatch");
    Integer den = 1;
    for (const auto& x : pt) den = lcm(den, Integer(x.get_den()));
    std::vector<IntPoly::Term> terms;
    Exponents e0(m + 1, 0);
    e0[0] = 1;
    terms.push_back({e0, den});
    for (std::size_t i = 0; i < m; ++i) {
      Exponents e(m + 1, 0);
      e[i + 1] = 1;
      terms.push_back({e, Integer(pt[i].get_num() * (den / pt[i].get_den()))});
    }
    acc = acc * IntPoly::from_terms(m + 1, std::move(terms));
  }
  out.poly = primitive_part(acc);
  out.T = static_cast<long>(points.size());
  return out;
}

namespace detail {

inline std::vector<Exponents> monomials_of_degree(std::size_t n, std::uint32_t D) {
  std::vector<Exponents> out;
  Exponents e(n, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i + 1 == n) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (std::uint32_t a = left + 1; a-- > 0;) {
      e[i] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, D);
  return out;
}

struct MacaulayOutcome {
  bool ok = false;
  IntPoly det;  // u-resultant up to a nonzero rational factor
  std::string why;
};

/// u-resultant of homogeneous f_0..f_{m-1} (in Z0..Zm) and L, with polynomial i
/// paired to variable var_of[i] and L paired to var_of[m].
inline MacaulayOutcome macaulay_u_resultant(const std::vector<IntPoly>& fh, const std::vector<std::size_t>& var_of) {
  MacaulayOutcome res;
  const std::size_t m = fh.size();
  const std::size_t n = m + 1;
  std::vector<std::uint32_t> deg(n, 1);
  std::uint32_t D = 1;
  for (std::size_t i = 0; i < m; ++i) {
    deg[i] = static_cast<std::uint32_t>(fh[i].degree());
    D += deg[i] - 1;
  }
  const auto mons = monomials_of_degree(n, D);
  const std::size_t N = mons.size();
  std::unordered_map<Exponents, std::size_t, ExponentsHash> col;
  for (std::size_t i = 0; i < N; ++i) col.emplace(mons[i], i);

  std::vector<std::vector<std::pair<std::size_t, Integer>>> frows;
  std::vector<Exponents> lrows;  // shift monomial for each L row
  for (const auto& a : mons) {
    std::size_t who = n;
    for (std::size_t i = 0; i < n; ++i)
      if (a[var_of[i]] >= deg[i]) {
        who = i;
        break;
      }
    if (who == n) throw invariant_violation("monomial not covered by the Macaulay partition");
    Exponents shift = a;
    shift[var_of[who]] -= deg[who];
    if (who == m) {
      lrows.push_back(shift);
      continue;
    }
    std::vector<std::pair<std::size_t, Integer>> row;
    for (const auto& t : fh[who].terms()) {
      Exponents e = shift;
      for (std::size_t k = 0; k < n; ++k) e[k] += t.exps[k];
      row.emplace_back(col.at(e), t.coeff);
    }
    frows.push_back(std::move(row));
  }
  const std::size_t K = lrows.size();
  std::size_t expected = 1;
  for (std::size_t i = 0; i < m; ++i) expected *= deg[i];
  if (K != expected) throw invariant_violation("Macaulay row count for the linear form is not the Bezout number");

  RatMatrix A(frows.size(), std::vector<Rational>(N, 0));
  for (std::size_t r = 0; r < frows.size(); ++r)
    for (const auto& [c, v] : frows[r]) A[r][c] = v;
  const auto pivots = rref(A);
  if (pivots.size() != frows.size()) {
    res.why = "coefficient block is rank deficient";
    return res;
  }
  std::vector<long> pivot_row(N, -1), qidx(N, -1);
  for (std::size_t r = 0; r < pivots.size(); ++r) pivot_row[pivots[r]] = static_cast<long>(r);
  std::vector<std::size_t> Q;
  for (std::size_t c = 0; c < N; ++c)
    if (pivot_row[c] < 0) {
      qidx[c] = static_cast<long>(Q.size());
      Q.push_back(c);
    }
  // Schur complement S = B_Q - B_P X, entries linear forms in U0..Um.
  std::vector<std::vector<std::vector<Rational>>> S(K, std::vector<std::vector<Rational>>(K, std::vector<Rational>(n, 0)));
  for (std::size_t b = 0; b < K; ++b) {
    for (std::size_t j = 0; j < n; ++j) {
      Exponents e = lrows[b];
      e[j] += 1;
      const std::size_t c = col.at(e);
      if (qidx[c] >= 0) {
        S[b][static_cast<std::size_t>(qidx[c])][j] += 1;
      } else {
        const auto& xrow = A[static_cast<std::size_t>(pivot_row[c])];
        for (std::size_t q = 0; q < K; ++q)
          if (sgn(xrow[Q[q]]) != 0) S[b][q][j] -= xrow[Q[q]];
      }
    }
  }
  PolyMatrix P(K, std::vector<IntPoly>(K, IntPoly(n)));
  for (std::size_t b = 0; b < K; ++b) {
    Integer scale = 1;
    for (const auto& e : S[b])
      for (const auto& x : e) scale = lcm(scale, Integer(x.get_den()));
    for (std::size_t q = 0; q < K; ++q) {
      std::vector<IntPoly::Term> terms;
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(S[b][q][j]) == 0) continue;
        Exponents e(n, 0);
        e[j] = 1;
        terms.push_back({e, Integer(S[b][q][j].get_num() * (scale / S[b][q][j].get_den()))});
      }
      P[b][q] = IntPoly::from_terms(n, std::move(terms));
    }
  }
  auto det = bareiss_det(std::move(P), n);
  if (det.is_zero()) {
    res.why = "determinant vanishes for this variable pairing";
    return res;
  }
  res.ok = true;
  res.det = primitive_part(det);
  return res;
}

}  // namespace detail

/// Eliminant of m polynomials in m variables via the u-resultant.
/// With allow_infinity, factors free of U0 (roots at infinity) are divided out
/// instead of rejected.
inline EliminantForm eliminant_macaulay(const std::vector<IntPoly>& sys, std::size_t m, bool allow_infinity = false) {
  if (sys.size() != m) throw input_error("the u-resultant route needs exactly m polynomials");
  if (m == 0) throw input_error("no variables");
  std::vector<IntPoly> fh;
  for (const auto& f : sys) {
    if (f.nvars() != m) throw input_error("polynomial has the wrong number of variables");
    if (f.is_zero()) throw input_error("zero generator: system is not zero-dimensional");
    if (f.degree() == 0) {
      EliminantForm e;
      e.method = EliminantMethod::macaulay;
      e.T = 0;
      e.poly = IntPoly::one(m + 1);
      e.notes.push_back("nonzero constant generator: empty variety");
      return e;
    }
    fh.push_back(homogenize(f));
  }
  std::vector<std::size_t> var_of(m + 1);
  for (std::size_t i = 0; i < m; ++i) var_of[i] = i + 1;
  var_of[m] = 0;
  std::vector<std::vector<std::size_t>> orders{var_of};
  std::vector<std::size_t> perm(m + 1);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (perm != var_of) orders.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::string last_reason;
  for (const auto& ord : orders) {
    auto r = detail::macaulay_u_resultant(fh, ord);
    if (!r.ok) {
      last_reason = r.why;
      continue;
    }
    const auto K = r.det.degree();
    IntPoly det = r.det;
    EliminantForm e;
    if (det.degree_in(0) < K) {
      if (!allow_infinity)
        throw input_error("system has solutions at infinity; the u-resultant route does not apply");
      det = divide_exact(det, content_in(det, 0));
      e.notes.push_back("factors at infinity removed");
    }
    e.method = EliminantMethod::macaulay;
    e.poly = squarefree_part(det, 0);
    e.T = static_cast<long>(e.poly.degree());
    if (e.T < K) e.notes.push_back("u-resultant had repeated factors (multiple solutions)");
    check_eliminant(e);
    return e;
  }
  throw input_error("u-resultant vanishes for every variable pairing (positive-dimensional or degenerate system): " +
                    last_reason);
}

struct EliminantOptions {
  std::uint64_t seed = 0;
  int max_combinations = 8;
  std::vector<std::uint64_t> probe_primes{1009, 1013, 1019};
  bool probe = true;
};

/// Eliminant of an arbitrary zero-dimensional system of s >= m polynomials.
inline EliminantForm compute_eliminant(const std::vector<IntPoly>& sys, std::size_t m,
                                       const EliminantOptions& opt = {}) {
  if (sys.empty()) throw input_error("empty system");
  for (const auto& f : sys)
    if (f.nvars() != m) throw input_error("polynomial has the wrong number of variables");
  std::vector<IntPoly> nz;
  for (const auto& f : sys)
    if (!f.is_zero()) nz.push_back(f);
  if (nz.empty()) throw input_error("all generators are zero: positive-dimensional");
  if (m == 1) {
    IntPoly g = nz[0];
    for (std::size_t i = 1; i < nz.size(); ++i) g = gcd(g, nz[i]);
    auto e = eliminant_univariate(g);
    if (nz.size() > 1) e.notes.push_back("common factor of all generators");
    return e;
  }
  if (nz.size() < m) throw input_error("fewer equations than variables: not zero-dimensional");
  if (nz.size() == m) return eliminant_macaulay(nz, m);

  // s > m: gcd of eliminants of random integer combinations.
  std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + 17);
  std::uniform_int_distribution<int> coef(-9, 9);
  std::optional<IntPoly> g;
  int stable = 0;
  int used = 0;
  std::vector<std::string> notes;
  for (int attempt = 0; attempt < opt.max_combinations; ++attempt) {
    std::vector<IntPoly> comb;
    for (std::size_t k = 0; k < m; ++k) {
      IntPoly c(m);
      while (c.is_zero()) {
        c = IntPoly(m);
        for (const auto& f : nz) c += f.scaled(Integer(coef(rng)));
      }
      comb.push_back(c);
    }
    EliminantForm e;
    try {
      e = eliminant_macaulay(comb, m, true);
    } catch (const input_error& ex) {
      notes.push_back(std::string("combination skipped: ") + ex.what());
      continue;
    }
    ++used;
    const IntPoly cand = g ? (g->is_constant() ? *g : gcd(*g, e.poly)) : e.poly;
    if (g && cand == *g) {
      if (++stable >= 2) break;
    } else {
      stable = 0;
    }
    g = cand;
    if (g->is_constant()) {
      if (++stable >= 2) break;
    }
  }
  if (!g || stable < 2) throw input_error("random combinations did not stabilize within the retry limit");
  EliminantForm out;
  out.method = EliminantMethod::macaulay;
  out.notes = notes;
  out.notes.push_back("gcd over " + std::to_string(used) + " random combinations");
  if (g->is_constant()) {
    out.T = 0;
    out.poly = IntPoly::one(m + 1);
  } else {
    out.poly = primitive_part(*g);
    out.T = static_cast<long>(out.poly.degree());
  }
  check_eliminant(out);
  if (opt.probe && out.T <= 8) {
    int agree = 0;
    long dmax = 0;
    for (const auto& f : nz) dmax = std::max<long>(dmax, f.degree());
    const unsigned cap = static_cast<unsigned>(std::max<long>(1, std::min<long>(out.T == 0 ? 1 : out.T, 8)));
    for (auto p : opt.probe_primes) {
      try {
        auto pc = count_points_fqbar(nz, m, p, cap);
        if (pc.total == out.T) ++agree;
      } catch (const budget_exceeded&) {
      }
    }
    out.notes.push_back("probe primes agreeing with T: " + std::to_string(agree) + "/" +
                        std::to_string(opt.probe_primes.size()));
    if (agree * 2 <= static_cast<int>(opt.probe_primes.size()))
      throw input_error("combination eliminant disagrees with probe-prime counts");
  }
  return out;
}

/// beta0 = coefficient of U0^T, delta = Res_U0(E, dE/dU0) (1 if T <= 1),
/// beta = |beta0 * leading nonzero coefficient of delta|.
inline BetaCertificate beta_certificate(const EliminantForm& E) {
  BetaCertificate b;
  const std::size_t n = E.poly.nvars();
  if (E.T == 0) {
    b.beta0 = 1;
    b.delta = IntPoly::one(n);
    b.beta = 1;
    return b;
  }
  Exponents e0(n, 0);
  e0[0] = static_cast<std::uint32_t>(E.T);
  b.beta0 = E.poly.coeff_of(e0);
  if (b.beta0 == 0) throw invariant_violation("eliminant has no U0^T term");
  if (E.T == 1) {
    b.delta = IntPoly::one(n);
  } else {
    b.delta = resultant(E.poly, E.poly.derivative(0), 0);
    if (b.delta.is_zero()) throw invariant_violation("discriminant vanishes: eliminant is not squarefree");
  }
  b.beta = abs(b.beta0 * b.delta.leading_coeff());
  return b;
}

/// True iff E mod p keeps U0-degree T and stays squarefree in U0.
inline bool verify_squarefree_mod_p(const EliminantForm& E, std::uint64_t p) {
  if (!is_prime(p)) throw input_error("p is not prime");
  if (E.T == 0) return true;
  const auto Ep = reduce_mod_p(E.poly, p);
  if (Ep.is_zero() || Ep.degree_in(0) != E.T) return false;
  if (E.T == 1) return true;
  const auto dE = Ep.derivative(0);
  if (dE.is_zero()) return false;
  if (dE.degree_in(0) == 0) return true;
  return !resultant(Ep, dE, 0).is_zero();
}

/// Number of distinct linear factors, from univariate specializations of U1..Um.
inline long count_T_from_eliminant(const EliminantForm& E, std::uint64_t seed = 0) {
  if (E.poly.is_constant()) return 0;
  const std::size_t n = E.poly.nvars();
  std::mt19937_64 rng(seed + 101);
  std::uniform_int_distribution<int> val(-9, 9);
  long best = -1, previous = -1;
  for (int attempt = 0; attempt < 8; ++attempt) {
    IntPoly f = E.poly;
    for (std::size_t i = 1; i < n; ++i) f = f.evaluate(i, Integer(val(rng)));
    std::vector<std::size_t> map(n, 0);
    auto g = f.remap(1, map);
    long d = g.degree() <= 0 ? 0 : static_cast<long>(squarefree_part(g, 0).degree());
    if (d == previous && d == best) return d;
    best = std::max(best, d);
    previous = d;
  }
  throw input_error("specializations stayed degenerate after 8 retries");
}

}  // namespace modred
