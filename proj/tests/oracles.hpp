#pragma once

// Randomized and fixture-driven checks shared by the unit tests and the
// acceptance binary. Every runner returns a Tally; zero violations is a pass.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "modred/modred.hpp"
#include "rng.hpp"

namespace modred::oracle {

using testing::Rng;

struct Tally {
  long instances = 0;
  long violations = 0;
  long skipped = 0;
  std::string first;

  void fail(const std::string& what) {
    if (violations++ == 0) first = what;
  }
  bool ok() const { return violations == 0 && instances > 0; }
};

inline std::string load_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct NamedSystem {
  std::string name;
  std::vector<IntPoly> polys;
  std::size_t m = 0;
};

inline NamedSystem load_named(const std::string& dir, const std::string& name) {
  const auto f = parse_system(load_text(dir + "/" + name));
  return {name, as_polynomials(f), f.nvars()};
}

/// The zero-dimensional fixtures, in a fixed order.
inline const std::vector<std::string>& system_fixtures() {
  static const std::vector<std::string> names{
      "sys_t0_x2p1_xm2.sys", "sys_x2m1.sys",           "sys_xm7.sys",          "sys_lin_2.sys",
      "sys_x2m1_y.sys",      "sys_circle_hyperbola.sys", "sys_sqrt2_tower.sys",  "sys_2xm3.sys",
      "sys_cubic.sys",       "sys_x2_double.sys",      "sys_overdetermined.sys", "sys_lin_3x3.sys",
      "sys_quad_pair.sys",   "sys_biquadratic.sys",    "sys_mixed.sys"};
  return names;
}

inline const std::vector<std::string>& dynamical_fixtures() {
  static const std::vector<std::string> names{"dyn_square.sys",      "dyn_inverse.sys", "dyn_square_2d.sys",
                                              "dyn_quadratic_c.sys", "dyn_henon.sys",   "dyn_rational_2d.sys",
                                              "dyn_affine.sys"};
  return names;
}

inline Integer max_of(const std::vector<Integer>& v) {
  Integer mx = 0;
  for (const auto& x : v) mx = std::max(mx, x);
  return mx;
}

inline long max_degree(const std::vector<IntPoly>& v) {
  long d = 0;
  for (const auto& f : v) d = std::max<long>(d, f.degree());
  return d;
}

inline Integer rat_height(const RatFunc& r) { return std::max(max_abs_coeff(r.num()), max_abs_coeff(r.den())); }

inline IntPoly random_full_poly(Rng& rng, std::size_t m, long deg, long max_coeff, int terms) {
  for (;;) {
    auto f = testing::random_nonzero_poly(rng, m, deg, max_coeff, terms);
    if (f.degree() >= 1) return f;
  }
}

// --- product, sum and composition envelopes ---------------------------------

inline Tally product_envelope(std::uint64_t seed, long n) {
  Rng rng(seed);
  Tally t;
  for (long i = 0; i < n; ++i) {
    const std::size_t m = rng.range(1, 3);
    const int s = static_cast<int>(rng.range(2, 4));
    std::vector<IntPoly> fs;
    std::vector<Integer> hs;
    IntPoly prod = IntPoly::one(m);
    long deg_sum = 0;
    for (int j = 0; j < s; ++j) {
      fs.push_back(testing::random_nonzero_poly(rng, m, 3, 50, 5));
      hs.push_back(max_abs_coeff(fs.back()));
      prod = prod * fs.back();
      deg_sum += fs.back().degree();
    }
    ++t.instances;
    if (prod.degree() != deg_sum) t.fail("product degree is not additive");
    if (!product_envelope_holds(max_abs_coeff(prod), hs, deg_sum, static_cast<long>(m)))
      t.fail("product envelope, m=" + std::to_string(m) + " deg sum " + std::to_string(deg_sum));
  }
  return t;
}

inline Tally sum_envelope(std::uint64_t seed, long n) {
  Rng rng(seed);
  Tally t;
  for (long i = 0; i < n; ++i) {
    const std::size_t m = rng.range(1, 3);
    const int s = static_cast<int>(rng.range(2, 5));
    std::vector<Integer> hs;
    IntPoly sum(m);
    for (int j = 0; j < s; ++j) {
      auto f = testing::random_nonzero_poly(rng, m, 3, 50, 5);
      hs.push_back(max_abs_coeff(f));
      sum += f;
    }
    ++t.instances;
    if (!sum_envelope_holds(max_abs_coeff(sum), hs)) t.fail("sum envelope");
  }
  return t;
}

/// Same-variable polynomial composition F(G_1..G_m).
inline Tally composition_same_vars(std::uint64_t seed, long n) {
  Rng rng(seed);
  Tally t;
  for (long i = 0; i < n; ++i) {
    const std::size_t m = rng.range(1, 3);
    const auto F = testing::random_nonzero_poly(rng, m, 3, 50, 5);
    std::vector<IntPoly> G;
    std::vector<Integer> hs;
    for (std::size_t j = 0; j < m; ++j) {
      G.push_back(testing::random_nonzero_poly(rng, m, rng.range(1, 3), 50, 4));
      hs.push_back(max_abs_coeff(G.back()));
    }
    const long degF = std::max<long>(F.degree(), 0), d = max_degree(G);
    const auto C = compose_poly(F, G);
    ++t.instances;
    if (!C.is_zero() && C.degree() > d * degF) t.fail("same-vars composition degree");
    const Integer b = Integer((d + 1) * degF);
    if (!exp_envelope(max_abs_coeff(C), max_abs_coeff(F), max_of(hs), Integer(degF), m + 1, b))
      t.fail("same-vars composition height, m=" + std::to_string(m));
  }
  return t;
}

/// F in ell variables composed with G_1..G_ell in m variables.
inline Tally composition_general(std::uint64_t seed, long n) {
  Rng rng(seed);
  Tally t;
  for (long i = 0; i < n; ++i) {
    const std::size_t ell = rng.range(1, 3), m = rng.range(1, 3);
    const auto F = testing::random_nonzero_poly(rng, ell, 3, 50, 5);
    std::vector<IntPoly> G;
    std::vector<Integer> hs;
    for (std::size_t j = 0; j < ell; ++j) {
      G.push_back(testing::random_nonzero_poly(rng, m, rng.range(1, 3), 50, 4));
      hs.push_back(max_abs_coeff(G.back()));
    }
    const long degF = std::max<long>(F.degree(), 0), d = max_degree(G);
    const auto C = compose_poly(F, G);
    ++t.instances;
    if (!C.is_zero() && C.degree() > d * degF) t.fail("general composition degree");
    const Integer base = max_of(hs) * Integer(ell + 1) * ipow(Integer(m + 1), static_cast<unsigned long>(d));
    if (max_abs_coeff(C) > max_abs_coeff(F) * ipow(base, static_cast<unsigned long>(degF)))
      t.fail("general composition height, ell=" + std::to_string(ell) + " m=" + std::to_string(m));
  }
  return t;
}

inline RatFunc random_ratfunc(Rng& rng, std::size_t m, long deg, long max_coeff) {
  auto p = testing::random_nonzero_poly(rng, m, deg, max_coeff, 4);
  auto q = testing::random_nonzero_poly(rng, m, deg, max_coeff, 3);
  return RatFunc::normalize(p, q);
}

/// R(S_1..S_m) for rational R and S_i.
inline Tally composition_rational(std::uint64_t seed, long n) {
  Rng rng(seed);
  Tally t;
  while (t.instances < n) {
    const std::size_t m = rng.range(1, 2);
    const auto R = random_ratfunc(rng, m, 2, 30);
    std::vector<RatFunc> S;
    std::vector<Integer> hs;
    for (std::size_t j = 0; j < m; ++j) {
      S.push_back(random_ratfunc(rng, m, 2, 30));
      hs.push_back(rat_height(S.back()));
    }
    long d = 0;
    for (const auto& s : S) d = std::max<long>(d, s.degree());
    const long degR = R.degree();
    RatFunc C;
    try {
      C = compose(R, S);
    } catch (const pole_collapse&) {
      ++t.skipped;
      continue;
    }
    ++t.instances;
    if (C.degree() > d * static_cast<long>(m) * degR) t.fail("rational composition degree");
    const Integer b = Integer((3 * d * static_cast<long>(m) + 1) * degR);
    if (!exp_envelope(rat_height(C), rat_height(R), max_of(hs), Integer(degR), m + 1, b))
      t.fail("rational composition height, m=" + std::to_string(m));
  }
  return t;
}

// --- iterates ----------------------------------------------------------------

/// Random polynomial systems; every iterate up to k against the closed-form envelope.
inline Tally polynomial_iterates(std::uint64_t seed, long n) {
  Rng rng(seed);
  Tally t;
  while (t.instances < n) {
    const std::size_t m = rng.range(1, 3);
    const long d = rng.range(2, 3);
    long k = rng.range(1, 4);
    const long cap = m == 1 ? 81 : m == 2 ? 27 : 16;
    while (k > 1 && ipow_ul(d, k) > cap) --k;
    std::vector<IntPoly> fs;
    for (std::size_t i = 0; i < m; ++i) fs.push_back(random_full_poly(rng, m, d, 50, 4));
    if (max_degree(fs) != d) {
      ++t.skipped;
      continue;
    }
    std::vector<Integer> hs;
    for (const auto& f : fs) hs.push_back(max_abs_coeff(f));
    const Integer H = max_of(hs);
    const auto its = iterates(DynSystem::from_polys(fs), k);
    ++t.instances;
    for (long j = 1; j <= k; ++j) {
      const auto e = iterate_exponents(MapKind::poly, d, static_cast<long>(m), j);
      for (const auto& r : its[j - 1].functions) {
        if (r.num().degree() > e.degree) t.fail("polynomial iterate degree at k=" + std::to_string(j));
        if (!exp_envelope(max_abs_coeff(r.num()), 1, H, e.h_exp, m + 1, e.log_exp))
          t.fail("polynomial iterate height at k=" + std::to_string(j) + ", m=" + std::to_string(m));
      }
    }
  }
  return t;
}

inline Tally rational_iterates(std::uint64_t seed, long n) {
  Rng rng(seed);
  Tally t;
  while (t.instances < n) {
    const std::size_t m = rng.range(1, 2);
    const long d = rng.range(m == 1 ? 2 : 1, 2);
    long k = rng.range(1, 3);
    while (k > 1 && ipow_ul(d, k) * ipow_ul(m, k - 1) > 16) --k;
    std::vector<RatFunc> fs;
    for (std::size_t i = 0; i < m; ++i) fs.push_back(random_ratfunc(rng, m, d, 20));
    long dd = 0;
    for (const auto& r : fs) dd = std::max<long>(dd, r.degree());
    if (dd != d) {
      ++t.skipped;
      continue;
    }
    std::vector<Integer> hs;
    for (const auto& r : fs) hs.push_back(rat_height(r));
    const Integer H = max_of(hs);
    std::vector<DynSystem> its;
    try {
      its = iterates(DynSystem::from_maps(fs), k);
    } catch (const pole_collapse&) {
      ++t.skipped;
      continue;
    }
    ++t.instances;
    for (long j = 1; j <= k; ++j) {
      const auto e = iterate_exponents(MapKind::rational, d, static_cast<long>(m), j);
      for (const auto& r : its[j - 1].functions) {
        if (r.degree() > e.degree) t.fail("rational iterate degree at k=" + std::to_string(j));
        if (!exp_envelope(rat_height(r), 1, H, e.h_exp, m + 1, e.log_exp))
          t.fail("rational iterate height at k=" + std::to_string(j) + ", m=" + std::to_string(m));
      }
    }
  }
  return t;
}

// --- eliminants and point heights -------------------------------------------

/// Random zero-dimensional systems with s = m; degree and height of E_V.
inline Tally eliminant_envelope(std::uint64_t seed, long n) {
  Rng rng(seed);
  Tally t;
  while (t.instances < n) {
    const std::size_t m = rng.range(1, 2);
    const long deg = m == 1 ? rng.range(1, 5) : rng.range(1, 2);
    std::vector<IntPoly> sys;
    for (std::size_t i = 0; i < m; ++i) sys.push_back(random_full_poly(rng, m, deg, 50, m == 1 ? 5 : 6));
    EliminantForm E;
    try {
      E = compute_eliminant(sys, m, {.seed = rng.next() % 1000});
    } catch (const input_error&) {
      ++t.skipped;  // roots at infinity or positive-dimensional draw
      continue;
    }
    ++t.instances;
    const long d = max_degree(sys);
    std::vector<Integer> hs;
    for (const auto& f : sys) hs.push_back(max_abs_coeff(f));
    const long mm = static_cast<long>(m);
    if (E.poly.degree_in(0) != E.T || E.poly.degree() != E.T) t.fail("eliminant U0-degree differs from T");
    if (Integer(E.T) > ipow_ul(d, mm)) t.fail("eliminant T exceeds d^m");
    const Integer a = Integer(mm) * ipow_ul(d, mm - 1), b = Integer(mm + 1) * ipow_ul(d, mm);
    if (!exp_envelope(max_abs_coeff(E.poly), 1, max_of(hs), a, m + 1, b))
      t.fail("eliminant height, m=" + std::to_string(m) + " d=" + std::to_string(d));
  }
  return t;
}

/// max |coordinate| of the primitive integer vector representing (1 : x_1 : ... : x_m).
inline Integer projective_size(const std::vector<Rational>& pt) {
  Integer den = 1;
  for (const auto& x : pt) den = lcm(den, Integer(x.get_den()));
  Integer mx = den;
  for (const auto& x : pt) mx = std::max(mx, Integer(abs(x.get_num()) * (den / x.get_den())));
  return mx;
}

/// Systems with only rational points: T <= d^m and the summed Weil heights obey
/// the Bezout-type bound. Also checks the eliminant against the point product.
inline Tally point_height_envelope(std::uint64_t seed, long n) {
  Rng rng(seed);
  Tally t;
  auto random_root = [&](std::set<Rational>& used) {
    for (;;) {
      Rational r(Integer(rng.range(-12, 12)), Integer(rng.range(1, 9)));
      r.canonicalize();
      if (used.insert(r).second) return r;
    }
  };
  auto linear = [](std::size_t nv, const std::vector<std::pair<std::size_t, Rational>>& coeffs, const Rational& c0) {
    // primitive integer form of sum coeff * x_var + c0
    Integer den = c0.get_den();
    for (const auto& [v, c] : coeffs) den = lcm(den, Integer(c.get_den()));
    std::vector<IntPoly::Term> ts;
    for (const auto& [v, c] : coeffs) {
      Exponents e(nv, 0);
      e[v] = 1;
      ts.push_back({e, Integer(c.get_num() * (den / c.get_den()))});
    }
    ts.push_back({Exponents(nv, 0), Integer(c0.get_num() * (den / c0.get_den()))});
    return IntPoly::from_terms(nv, std::move(ts));
  };
  while (t.instances < n) {
    const std::size_t m = rng.range(1, 2);
    std::vector<std::vector<Rational>> points;
    std::vector<IntPoly> sys;
    if (m == 1) {
      std::set<Rational> used;
      IntPoly f = IntPoly::one(1);
      const long T = rng.range(1, 4);
      for (long i = 0; i < T; ++i) {
        const auto r = random_root(used);
        points.push_back({r});
        f = f * linear(1, {{0, Rational(1)}}, -r);
      }
      sys.push_back(f.scaled(Integer(rng.range(1, 3))));
    } else {
      // F1 = prod (x - a_i), F2 = prod (y - b_j x - c_j)
      std::set<Rational> ua, ub;
      const long T1 = rng.range(1, 3), T2 = rng.range(1, 3);
      std::vector<Rational> as;
      IntPoly f1 = IntPoly::one(2), f2 = IntPoly::one(2);
      for (long i = 0; i < T1; ++i) {
        as.push_back(random_root(ua));
        f1 = f1 * linear(2, {{0, Rational(1)}}, -as.back());
      }
      const bool sheared = rng.coin();
      for (long j = 0; j < T2; ++j) {
        const auto c = random_root(ub);
        const Rational b = sheared ? Rational(rng.range(-3, 3)) : Rational(0);
        f2 = f2 * linear(2, {{1, Rational(1)}, {0, -b}}, -c);
        for (const auto& a : as) points.push_back({a, b * a + c});
      }
      sys = {f1, f2};
      std::sort(points.begin(), points.end());
      points.erase(std::unique(points.begin(), points.end()), points.end());
    }
    ++t.instances;
    const long mm = static_cast<long>(m), d = max_degree(sys);
    std::vector<Integer> hs;
    for (const auto& f : sys) hs.push_back(max_abs_coeff(f));
    if (Integer(static_cast<long>(points.size())) > ipow_ul(d, mm)) t.fail("point count exceeds d^m");
    Integer prod = 1;
    for (const auto& pt : points) prod *= projective_size(pt);
    const Integer a = Integer(mm) * ipow_ul(d, mm - 1), b = Integer(mm) * ipow_ul(d, mm);
    if (!exp_envelope(prod, 1, max_of(hs), a, m + 1, b)) t.fail("summed point heights, m=" + std::to_string(m));
    try {
      const auto E = compute_eliminant(sys, m);
      const auto Ep = eliminant_from_points(points, m);
      if (E.T != static_cast<long>(points.size()) || !(E.poly == Ep.poly))
        t.fail("eliminant differs from the point product");
    } catch (const input_error& e) {
      t.fail(std::string("eliminant failed: ") + e.what());
    }
  }
  return t;
}

// --- certificates on fixtures -------------------------------------------------

struct FixtureCertificate {
  std::string name;
  EliminantForm E;
  BetaCertificate beta;
  NullsatzCertificate alpha;
  bool identity = false;
  std::vector<std::uint64_t> bad_primes;
  std::vector<std::uint64_t> gaps;
};

inline FixtureCertificate certify_fixture(const NamedSystem& s, std::uint64_t p_max, bool scan = true) {
  FixtureCertificate c;
  c.name = s.name;
  c.E = compute_eliminant(s.polys, s.m);
  c.beta = beta_certificate(c.E);
  c.alpha = find_certificate(s.polys, s.m, c.E);
  c.identity = verify_certificate(s.polys, s.m, c.E, c.alpha);
  if (scan) {
    ScanOptions opt;
    opt.certificates = false;
    const auto rep = scan_bad_primes(s.polys, s.m, c.E.T, p_max, opt);
    for (const auto& r : rep.deviants) c.bad_primes.push_back(r.p);
    c.gaps = rep.gaps;
  }
  return c;
}

/// Every empirical bad prime divides alpha * beta.
inline Tally soundness(const std::vector<FixtureCertificate>& certs) {
  Tally t;
  for (const auto& c : certs) {
    ++t.instances;
    if (!c.identity) t.fail(c.name + ": certificate identity does not expand");
    if (!c.gaps.empty()) t.fail(c.name + ": scan skipped primes on budget");
    const Integer mod = combined_modulus(c.alpha, c.beta);
    for (auto p : c.bad_primes)
      if (!divides(p, mod)) t.fail(c.name + ": bad prime " + std::to_string(p) + " does not divide alpha*beta");
  }
  return t;
}

/// For p not dividing beta the eliminant stays squarefree of U0-degree T.
inline Tally beta_behaviour(const std::vector<FixtureCertificate>& certs, std::uint64_t p_max) {
  Tally t;
  const auto primes = primes_up_to(p_max);
  for (const auto& c : certs) {
    ++t.instances;
    for (auto p : primes)
      if (!divides(p, c.beta.beta) && !verify_squarefree_mod_p(c.E, p))
        t.fail(c.name + ": not squarefree mod " + std::to_string(p));
  }
  return t;
}

// --- gap lemma ----------------------------------------------------------------

inline IndexList random_index_list(Rng& rng) {
  IndexList l;
  l.N = static_cast<std::uint64_t>(rng.range(5, 400));
  const long M = rng.range(2, static_cast<long>((l.N - 1) / 2));
  std::set<std::uint64_t> pick;
  while (static_cast<long>(pick.size()) < M) pick.insert(static_cast<std::uint64_t>(rng.range(0, l.N - 1)));
  l.indices.assign(pick.begin(), pick.end());
  return l;
}

/// Checks the witness independently: r <= 2N/(M-1) and #{gaps = r} >= (M-1)^2/(4N).
inline Tally gap_lemma_suite(std::uint64_t seed, long n) {
  Rng rng(seed);
  Tally t;
  for (long i = 0; i < n; ++i) {
    const auto l = random_index_list(rng);
    ++t.instances;
    GapWitness w;
    try {
      w = gap_lemma(l);
    } catch (const std::exception& e) {
      t.fail(std::string("gap_lemma threw: ") + e.what());
      continue;
    }
    const long M = static_cast<long>(l.indices.size());
    std::uint64_t count = 0;
    for (long j = 0; j + 1 < M; ++j) count += l.indices[j + 1] - l.indices[j] == w.r;
    const Rational r_bound(Integer(2 * l.N), Integer(M - 1));
    const Rational c_bound(Integer(M - 1) * (M - 1), Integer(4 * l.N));
    if (w.r < 1 || Rational(Integer(w.r)) > r_bound) t.fail("r above 2N/(M-1)");
    if (count != w.count) t.fail("reported count differs from recount");
    if (Rational(Integer(count)) < c_bound) t.fail("count below (M-1)^2/(4N)");
  }
  return t;
}

// --- cross-oracle routes ------------------------------------------------------

inline unsigned periodic_cap(std::size_t m) { return m == 1 ? 3 : 2; }

/// Variety route vs orbit scan for k in {1, 2} over small primes.
inline Tally periodic_routes(const std::vector<std::pair<std::string, DynSystem>>& systems) {
  Tally t;
  for (const auto& [name, s] : systems)
    for (long k = 1; k <= 2; ++k)
      for (std::uint64_t p : {3, 5, 7}) {
        const auto r = periodic_points(s, k, p, periodic_cap(s.m));
        ++t.instances;
        if (!r.routes_agree) t.fail(name + ": scan route skipped");
        else if (!*r.routes_agree)
          t.fail(name + ": routes differ at k=" + std::to_string(k) + " p=" + std::to_string(p));
      }
  return t;
}

inline FqPoint random_point(Rng& rng, const FqTower& F, std::size_t m) {
  FqPoint pt;
  for (std::size_t i = 0; i < m; ++i) pt.push_back(F.element(rng.next() % F.order().get_ui()));
  return pt;
}

/// Direct intersection vs the product system against the diagonal.
inline Tally intersection_routes(const std::vector<std::pair<std::string, DynSystem>>& systems, std::uint64_t seed) {
  Rng rng(seed);
  Tally t;
  for (const auto& [a, R] : systems)
    for (const auto& [b, Q] : systems) {
      if (R.m != Q.m) continue;
      for (std::uint64_t p : {5, 7})
        for (unsigned e = 1; e <= 2; ++e) {
          FqTower F(p, e);
          for (int trial = 0; trial < 3; ++trial) {
            const auto u = random_point(rng, F, R.m), v = random_point(rng, F, Q.m);
            const auto res = orbit_intersection(R, Q, F, u, v, 60);
            ++t.instances;
            if (!res.agree || res.direct.indices != res.diagonal.indices) t.fail(a + " x " + b + ": routes differ");
          }
        }
    }
  return t;
}

/// Moebius counting vs deduplication over the compositum.
inline Tally moebius_vs_dedup(const std::vector<NamedSystem>& systems) {
  Tally t;
  for (const auto& s : systems)
    for (std::uint64_t p : {2, 3, 5, 7})
      for (unsigned E = 1; E <= 4; ++E) {
        const double size = std::pow(static_cast<double>(p), static_cast<double>(lcm_range(E) * s.m));
        if (size > 2e6) continue;
        bool all_zero = true;
        for (const auto& f : s.polys) all_zero = all_zero && reduce_mod_p(f, p).is_zero();
        if (all_zero) continue;
        ++t.instances;
        const auto a = count_points_fqbar(s.polys, s.m, p, E, Engine::exhaustive).total;
        const auto b = count_points_dedup(s.polys, s.m, p, E);
        if (a != b) t.fail(s.name + ": Moebius and dedup differ at p=" + std::to_string(p));
      }
  return t;
}

// --- monomial periodic counts and growth ---------------------------------------

struct MonomialCase {
  std::size_t m;
  long d, k;
};

inline Tally monomial_periodic(const std::vector<MonomialCase>& cases, std::uint64_t p_max) {
  Tally t;
  for (const auto& c : cases) {
    std::vector<IntPoly> fs;
    for (std::size_t i = 0; i < c.m; ++i) fs.push_back(IntPoly::variable(c.m, i).pow(static_cast<unsigned>(c.d)));
    const auto s = DynSystem::from_polys(fs);
    const Integer expect = ipow_ul(c.d, c.k * static_cast<long>(c.m));
    const unsigned cap = static_cast<unsigned>(expect.get_ui());
    const Integer dk1 = ipow_ul(c.d, c.k) - 1;
    for (auto p : primes_up_to(p_max)) {
      if (divides(p, dk1)) continue;
      ++t.instances;
      const auto got = count_periodic_points(s, c.k, p, cap);
      if (got != expect)
        t.fail("X^" + std::to_string(c.d) + " m=" + std::to_string(c.m) + " k=" + std::to_string(c.k) + " p=" +
               std::to_string(p) + ": " + got.get_str());
    }
  }
  return t;
}

struct GrowthCase {
  std::size_t m;
  std::vector<std::vector<unsigned>> exponents;
  std::uint64_t seed;
};

inline std::vector<GrowthCase> triangular_cases() {
  return {{2, {{0, 1}, {0, 0}}, 1},
          {2, {{0, 2}, {0, 0}}, 2},
          {3, {{0, 1, 1}, {0, 0, 1}, {0, 0, 0}}, 3},
          {3, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}, 4},
          {3, {{0, 0, 1}, {0, 0, 2}, {0, 0, 0}}, 5}};
}

struct GrowthOutcome {
  Tally tally;
  std::vector<std::vector<double>> exponents;
};

/// Fitted degree slope over k in [6, 12] is at most m - i + 0.2 (i one-based).
inline GrowthOutcome triangular_growth() {
  GrowthOutcome out;
  for (const auto& c : triangular_cases()) {
    const auto s = gen_triangular(c.m, c.exponents, c.seed);
    const auto g = growth_fit(s, 12, 6);
    out.exponents.push_back(g.degree_exponent);
    ++out.tally.instances;
    for (std::size_t i = 0; i < c.m; ++i)
      if (g.degree_exponent[i] > static_cast<double>(c.m - i) - 1.0 + 0.2)
        out.tally.fail("triangular m=" + std::to_string(c.m) + " seed " + std::to_string(c.seed) + ": slope of F" +
                       std::to_string(i + 1) + " is " + std::to_string(g.degree_exponent[i]));
  }
  return out;
}

/// Generic quadratic control: log deg F^(k) >= k log d for every k.
inline Tally control_growth(std::uint64_t seed, long k_max) {
  Rng rng(seed);
  Tally t;
  std::vector<IntPoly> fs;
  for (int i = 0; i < 2; ++i) {
    IntPoly f(2);
    for (auto e : std::vector<Exponents>{{2, 0}, {1, 1}, {0, 2}, {1, 0}, {0, 1}, {0, 0}})
      f += IntPoly::from_terms(2, {{e, Integer(rng.range(1, 5))}});
    fs.push_back(f);
  }
  const auto its = iterates(DynSystem::from_polys(fs), k_max);
  for (long k = 1; k <= k_max; ++k)
    for (const auto& r : its[k - 1].functions) {
      ++t.instances;
      if (std::log(static_cast<double>(r.num().degree())) < static_cast<double>(k) * std::log(2.0) - 1e-9)
        t.fail("control iterate degree below 2^k at k=" + std::to_string(k));
    }
  return t;
}

}  // namespace modred::oracle
