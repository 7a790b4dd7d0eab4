#pragma once

// Visit sets of orbits on varieties, orbit intersections, the small-gap statistic,
// escape evidence, and the Gamma-system experiment over subsets of
// iteration indices.

#include <set>

#include "modred/dynamics.hpp"
#include "modred/heights.hpp"
#include "modred/nullsatz.hpp"
#include "modred/parallel.hpp"

namespace modred {

struct GapWitness {
  std::uint64_t r = 0;
  std::uint64_t count = 0;
  std::uint64_t t = 0;  // search limit min(floor(2N/(M-1)), N)
};

/// Most frequent consecutive gap r in [1, t], ties to the smallest r.
inline GapWitness gap_lemma(const IndexList& s) {
  const std::uint64_t M = s.indices.size(), N = s.N;
  if (M < 2 || 2 * M >= N) throw input_error("gap lemma needs 2 <= M < N/2");
  for (std::size_t i = 0; i < M; ++i) {
    if (s.indices[i] >= N) throw input_error("index out of range");
    if (i && s.indices[i] <= s.indices[i - 1]) throw input_error("indices must be strictly increasing");
  }
  GapWitness w;
  w.t = std::min<std::uint64_t>(2 * N / (M - 1), N);
  std::vector<std::uint64_t> census(w.t + 1, 0);
  for (std::size_t i = 0; i + 1 < M; ++i) {
    const auto g = s.indices[i + 1] - s.indices[i];
    if (g <= w.t) ++census[g];
  }
  for (std::uint64_t r = 1; r <= w.t; ++r)
    if (census[r] > w.count) {
      w.count = census[r];
      w.r = r;
    }
  const Rational lhs_r(Integer(w.r) * (M - 1)), rhs_r(Integer(2 * N));
  if (w.count == 0 || lhs_r > rhs_r) throw invariant_violation("gap lemma: r exceeds 2N/(M-1)");
  if (Integer(w.count) * 4 * N < Integer(M - 1) * (M - 1)) throw invariant_violation("gap lemma: count below (M-1)^2/(4N)");
  return w;
}

inline void check_variety(const std::vector<IntPoly>& V, std::size_t m) {
  if (V.empty()) throw input_error("variety needs at least one polynomial");
  for (const auto& P : V) {
    if (P.nvars() != m) throw input_error("variety polynomial has the wrong number of variables");
    if (P.is_zero()) throw input_error("zero polynomial in variety");
  }
}

/// n < N with the n-th orbit point defined and on V.
inline IndexList variety_visits(const DynSystem& s, const std::vector<IntPoly>& V, const FqTower& F,
                                const FqPoint& start, std::uint64_t N) {
  check_variety(V, s.m);
  if (start.size() != s.m) throw input_error("start point has the wrong dimension");
  ReducedSystem R(s, F);
  const auto Vp = reduce_system(V, F);
  IndexList out;
  out.N = N;
  FqPoint cur = start;
  for (std::uint64_t n = 0; n < N; ++n) {
    bool on = true;
    for (const auto& P : Vp)
      if (!F.is_zero(P.eval(cur))) {
        on = false;
        break;
      }
    if (on) out.indices.push_back(n);
    if (n + 1 == N) break;
    auto nxt = R.apply(cur);
    if (!nxt) break;
    cur = std::move(*nxt);
  }
  return out;
}

inline RatFunc remap_ratfunc(const RatFunc& r, std::size_t nvars, const std::vector<std::size_t>& map) {
  return RatFunc::normalize(r.num().remap(nvars, map), r.den().remap(nvars, map));
}

/// (R(X), Q(Y)) in 2m variables X_1..X_m, Y_1..Y_m.
inline DynSystem product_system(const DynSystem& R, const DynSystem& Q) {
  if (R.m != Q.m) throw input_error("systems must have the same dimension");
  const std::size_t m = R.m;
  std::vector<std::size_t> mx(m), my(m);
  for (std::size_t i = 0; i < m; ++i) {
    mx[i] = i;
    my[i] = m + i;
  }
  std::vector<RatFunc> fs;
  for (const auto& r : R.functions) fs.push_back(remap_ratfunc(r, 2 * m, mx));
  for (const auto& q : Q.functions) fs.push_back(remap_ratfunc(q, 2 * m, my));
  return DynSystem::from_maps(std::move(fs));
}

/// X_j - Y_j, j = 1..m.
inline std::vector<IntPoly> diagonal_variety(std::size_t m) {
  std::vector<IntPoly> out;
  for (std::size_t j = 0; j < m; ++j) out.push_back(IntPoly::variable(2 * m, j) - IntPoly::variable(2 * m, m + j));
  return out;
}

struct IntersectionResult {
  IndexList direct;
  IndexList diagonal;
  bool agree = true;
};

/// n < N with both orbit points defined and equal, directly and through the
/// product system against the diagonal.
inline IntersectionResult orbit_intersection(const DynSystem& R, const DynSystem& Q, const FqTower& F,
                                             const FqPoint& u, const FqPoint& v, std::uint64_t N) {
  if (R.m != Q.m) throw input_error("systems must have the same dimension");
  if (u.size() != R.m || v.size() != Q.m) throw input_error("start point has the wrong dimension");
  IntersectionResult res;
  res.direct.N = N;
  ReducedSystem Rp(R, F), Qp(Q, F);
  std::optional<FqPoint> a = u, b = v;
  for (std::uint64_t n = 0; n < N && a && b; ++n) {
    if (*a == *b) res.direct.indices.push_back(n);
    if (n + 1 == N) break;
    a = Rp.apply(*a);
    b = Qp.apply(*b);
  }
  FqPoint uv = u;
  uv.insert(uv.end(), v.begin(), v.end());
  res.diagonal = variety_visits(product_system(R, Q), diagonal_variety(R.m), F, uv, N);
  res.agree = res.direct.indices == res.diagonal.indices;
  return res;
}

// ---------------------------------------------------------------------------
// Escape evidence

/// P(X) and numerators of P(R^(k)(X)); rational systems add 1 - X_0 prod G_{i,j}
/// over j <= k with X_0 as the last variable.
inline std::vector<IntPoly> build_escape_system(const DynSystem& s, const std::vector<IntPoly>& V, long k) {
  check_variety(V, s.m);
  const auto its = iterates(s, k);
  const std::size_t m = s.m;
  const bool rational = !s.polynomial();
  const std::size_t n = rational ? m + 1 : m;
  std::vector<std::size_t> map(m);
  std::iota(map.begin(), map.end(), 0);
  std::vector<IntPoly> out;
  for (const auto& P : V) out.push_back(P.remap(n, map));
  for (const auto& P : V) out.push_back(compose(RatFunc::from_poly(P), its.back().functions).num().remap(n, map));
  if (rational) {
    IntPoly prod = IntPoly::one(n);
    for (const auto& it : its)
      for (const auto& r : it.functions) prod *= r.den().remap(n, map);
    out.push_back(IntPoly::one(n) - IntPoly::variable(n, m) * prod);
  }
  return out;
}

struct EscapeStep {
  long k = 0;
  Integer cap;                              // Bezout-type bound on the number of points
  std::vector<std::uint64_t> primes;
  std::vector<std::optional<Integer>> counts;  // nullopt: budget exceeded
  std::string verdict;                      // finiteness evidence | not escaping | inconclusive
};

inline std::vector<EscapeStep> escape_check(const DynSystem& s, const std::vector<IntPoly>& V, long k_max,
                                            const std::vector<std::uint64_t>& probe_primes, unsigned degree_cap = 2,
                                            std::uint64_t budget = kDefaultBudget) {
  if (k_max < 1) throw input_error("k_max must be at least 1");
  if (probe_primes.empty()) throw input_error("need at least one probe prime");
  long D = 1;
  for (const auto& P : V) D = std::max<long>(D, P.degree());
  const long d = std::max<long>(1, s.degree());
  std::vector<EscapeStep> out;
  for (long k = 1; k <= k_max; ++k) {
    EscapeStep st;
    st.k = k;
    st.cap = bezout_escape_count(D, static_cast<long>(V.size()), d, static_cast<long>(s.m), k);
    const auto sys = build_escape_system(s, V, k);
    const std::size_t n = sys[0].nvars();
    bool exceeded = false, all_equal = true;
    for (auto p : probe_primes) {
      st.primes.push_back(p);
      try {
        auto pc = count_points_fqbar(sys, n, p, degree_cap, Engine::solver, budget);
        if (pc.total > st.cap) exceeded = true;
        if (!st.counts.empty() && (!st.counts.front() || *st.counts.front() != pc.total)) all_equal = false;
        st.counts.push_back(pc.total);
      } catch (const budget_exceeded&) {
        st.counts.push_back(std::nullopt);
        all_equal = false;
      } catch (const input_error&) {
        // Every equation vanishes mod p: the whole space.
        exceeded = true;
        st.counts.push_back(std::nullopt);
      }
    }
    st.verdict = exceeded ? "not escaping" : all_equal ? "finiteness evidence" : "inconclusive";
    out.push_back(std::move(st));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gamma systems

/// For each k in L: numerators Gamma_{j,k} of P_j(R^(k)) and the pole
/// exclusion Gamma_{0,k}. All Gamma_{0,k} share X_0 (last variable) and use the
/// product of G_{i,j} over j <= max L, so X_0 is consistent across k.
inline std::vector<IntPoly> build_gamma_system(const DynSystem& s, const std::vector<IntPoly>& V,
                                               const std::vector<long>& L) {
  check_variety(V, s.m);
  if (L.empty()) throw input_error("index set must be non-empty");
  const long kmax = *std::max_element(L.begin(), L.end());
  if (*std::min_element(L.begin(), L.end()) < 0) throw input_error("iteration indices must be non-negative");
  const std::size_t m = s.m, n = m + 1;
  std::vector<std::size_t> map(m);
  std::iota(map.begin(), map.end(), 0);
  std::vector<DynSystem> its;
  if (kmax >= 1) its = iterates(s, kmax);
  IntPoly prod = IntPoly::one(n);
  for (const auto& it : its)
    for (const auto& r : it.functions) prod *= r.den().remap(n, map);
  const IntPoly gamma0 = IntPoly::one(n) - IntPoly::variable(n, m) * prod;
  std::vector<IntPoly> out;
  for (long k : L) {
    out.push_back(gamma0);
    for (const auto& P : V) {
      const IntPoly g = k == 0 ? P : compose(RatFunc::from_poly(P), its[k - 1].functions).num();
      out.push_back(g.remap(n, map));
    }
  }
  return out;
}

/// True if the system has a zero of degree <= cap over F_p.
inline bool solvable_mod_p(const std::vector<IntPoly>& sys, std::size_t n, std::uint64_t p, unsigned cap,
                           std::uint64_t budget_limit = kDefaultBudget) {
  bool any = false;
  for (const auto& f : sys)
    if (!reduce_mod_p(f, p).is_zero()) any = true;
  if (!any) return true;
  Budget budget(budget_limit);
  for (unsigned e = 1; e <= cap; ++e) {
    FqTower F(p, e);
    if (!find_points(sys, n, F, budget, Engine::solver).empty()) return true;
  }
  return false;
}

struct GammaFinding {
  std::vector<long> subset;
  std::size_t polys = 0;
  std::string emptiness;  // certified | probed | nonempty
  std::optional<Integer> alpha;
  std::vector<std::uint64_t> solvable_primes;
};

struct UmlOptions {
  std::vector<std::uint64_t> probe_primes{1009, 1013, 1019, 1021, 1031};
  unsigned degree_cap = 1;
  std::size_t max_subsets = 256;
  std::size_t certificate_unknowns = 1500;
  unsigned threads = 1;
  std::uint64_t budget = kDefaultBudget;
};

struct UmlReport {
  Integer M;
  std::vector<GammaFinding> findings;
  std::vector<std::uint64_t> support;  // union of solvable primes
};

inline UmlReport uml_experiment(const DynSystem& s, const std::vector<IntPoly>& V, long L, const Rational& eps,
                                std::uint64_t prime_budget, const UmlOptions& opt = {}) {
  check_variety(V, s.m);
  UmlReport rep;
  rep.M = uml_M(eps, L);
  if (!rep.M.fits_slong_p() || rep.M > 64) throw budget_exceeded("M is too large for a subset experiment");
  const long M = rep.M.get_si();
  std::vector<std::vector<long>> subsets;
  std::vector<long> cur;
  std::function<void(long)> rec = [&](long start) {
    if (static_cast<long>(cur.size()) == L + 1) {
      if (subsets.size() >= opt.max_subsets)
        throw budget_exceeded("more than " + std::to_string(opt.max_subsets) + " index subsets");
      subsets.push_back(cur);
      return;
    }
    for (long k = start; k < M; ++k) {
      cur.push_back(k);
      rec(k + 1);
      cur.pop_back();
    }
  };
  rec(0);
  const auto primes = primes_up_to(prime_budget);
  std::function<GammaFinding(std::size_t)> task = [&](std::size_t i) {
    GammaFinding g;
    g.subset = subsets[i];
    const auto sys = build_gamma_system(s, V, g.subset);
    const std::size_t n = s.m + 1;
    g.polys = sys.size();
    bool empty = true;
    for (auto p : opt.probe_primes)
      if (solvable_mod_p(sys, n, p, opt.degree_cap, opt.budget)) empty = false;
    g.emptiness = empty ? "probed" : "nonempty";
    if (empty) {
      try {
        EliminantForm E;
        E.T = 0;
        E.poly = IntPoly::one(n + 1);
        NullsatzOptions no;
        no.N_cap = 1;
        no.max_unknowns = opt.certificate_unknowns;
        auto c = find_certificate(sys, n, E, no);
        g.alpha = c.alpha;
        g.emptiness = "certified";
      } catch (const std::exception&) {
      }
    }
    for (auto p : primes)
      if (solvable_mod_p(sys, n, p, opt.degree_cap, opt.budget)) g.solvable_primes.push_back(p);
    return g;
  };
  rep.findings = parallel_map<GammaFinding>(subsets.size(), opt.threads, task);
  std::set<std::uint64_t> sup;
  for (const auto& f : rep.findings) sup.insert(f.solvable_primes.begin(), f.solvable_primes.end());
  rep.support.assign(sup.begin(), sup.end());
  return rep;
}

}  // namespace modred
