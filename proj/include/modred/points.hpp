#pragma once

// Zeros of polynomial systems over F_{p^e} and distinct-point counts over the
// algebraic closure. Two engines: plain enumeration of F_q^m (the reference
// oracle) and an elimination-assisted solver that branches on roots of
// univariate polynomials obtained by resultants.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modred/finitefield.hpp"
#include "modred/polyalg.hpp"
#include "modred/ratfunc.hpp"

namespace modred {

using FqPoint = std::vector<FqElem>;

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Counter of elementary enumeration steps; exceeding the limit throws.
class Budget {
 public:
  explicit Budget(std::uint64_t limit = kDefaultBudget) : limit_(limit) {}
  void charge(std::uint64_t n) {
    if (n > limit_ - used_)
      throw budget_exceeded("enumeration budget of " + std::to_string(limit_) + " exceeded");
    used_ += n;
  }
  /// Charges q^k where q is given as an exact integer.
  void charge(const Integer& n) {
    if (!n.fits_ulong_p()) throw budget_exceeded("enumeration budget of " + std::to_string(limit_) + " exceeded");
    charge(static_cast<std::uint64_t>(n.get_ui()));
  }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

enum class Engine { exhaustive, solver };

inline bool point_less(const FqPoint& a, const FqPoint& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline std::vector<FqPoly> reduce_system(const std::vector<IntPoly>& sys, const FqTower& F) {
  std::vector<FqPoly> out;
  for (const auto& f : sys) out.push_back(reduce_to_fq(f, F));
  return out;
}

/// All points of F_q^m annihilating every generator, by scanning every tuple.
inline std::vector<FqPoint> enumerate_exhaustive(const std::vector<FqPoly>& sys, std::size_t m, const FqTower& F,
                                                 Budget& budget) {
  const Integer q = F.order();
  budget.charge(ipow(q, static_cast<unsigned long>(m)));
  const std::uint64_t qq = q.get_ui();
  std::vector<FqElem> elems;
  for (std::uint64_t i = 0; i < qq; ++i) elems.push_back(F.element(i));
  std::vector<FqPoint> out;
  for (const auto& f : sys)
    if (f.is_constant() && !f.is_zero()) return out;
  std::vector<std::size_t> idx(m, 0);
  FqPoint pt(m, elems.empty() ? FqElem{} : elems[0]);
  for (;;) {
    bool ok = true;
    for (const auto& f : sys) {
      if (!f.is_zero() && !f.ring().is_zero(f.eval(pt))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(pt);
    std::size_t k = m;
    while (k > 0) {
      --k;
      if (++idx[k] < qq) {
        pt[k] = elems[idx[k]];
        break;
      }
      idx[k] = 0;
      pt[k] = elems[0];
      if (k == 0) return out;
    }
    if (m == 0) return out;
  }
}

namespace detail {

inline UPoly to_upoly(const FqPoly& f, std::size_t var) {
  UPoly out;
  for (const auto& t : f.terms()) {
    const auto k = t.exps[var];
    if (out.size() <= k) out.resize(k + 1);
    out[k] = t.coeff;
  }
  upoly::trim(out);
  return out;
}

inline bool only_var(const FqPoly& f, std::size_t var) {
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < t.exps.size(); ++i)
      if (i != var && t.exps[i]) return false;
  return true;
}

class Solver {
 public:
  Solver(const FqTower& F, std::size_t m, Budget& budget, std::uint64_t seed)
      : F_(F), m_(m), budget_(budget), seed_(seed) {}

  std::vector<FqPoint> solve(const std::vector<FqPoly>& sys) {
    std::vector<bool> assigned(m_, false);
    FqPoint pt(m_);
    recurse(sys, assigned, pt);
    std::sort(out_.begin(), out_.end(), point_less);
    return std::move(out_);
  }

 private:
  // Drops zero generators; returns false if a nonzero constant remains.
  static bool clean(std::vector<FqPoly>& sys) {
    std::vector<FqPoly> kept;
    for (auto& f : sys) {
      if (f.is_zero()) continue;
      if (f.is_constant()) return false;
      kept.push_back(std::move(f));
    }
    sys = std::move(kept);
    return true;
  }

  void recurse(std::vector<FqPoly> sys, std::vector<bool>& assigned, FqPoint& pt) {
    if (!clean(sys)) return;
    std::vector<std::size_t> free;
    for (std::size_t v = 0; v < m_; ++v)
      if (!assigned[v]) free.push_back(v);
    if (free.empty()) {
      out_.push_back(pt);
      return;
    }
    if (sys.empty()) {
      enumerate_free(free, 0, pt);
      return;
    }
    // A generator in one variable pins that variable to finitely many values.
    std::optional<std::size_t> var;
    UPoly uni;
    for (std::size_t v : free) {
      UPoly g;
      bool have = false;
      for (const auto& f : sys) {
        if (!only_var(f, v)) continue;
        g = have ? upoly::gcd(F_, g, to_upoly(f, v)) : to_upoly(f, v);
        have = true;
      }
      if (have) {
        var = v;
        uni = std::move(g);
        break;
      }
    }
    if (!var) {
      for (std::size_t v : free) {
        if (auto g = eliminate_to(sys, v, free)) {
          var = v;
          uni = std::move(*g);
          break;
        }
      }
    }
    std::vector<FqElem> values;
    if (var) {
      values = upoly::roots(F_, uni, seed_);
    } else {
      var = free.front();
      const Integer q = F_.order();
      budget_.charge(q);
      for (std::uint64_t i = 0; i < q.get_ui(); ++i) values.push_back(F_.element(i));
    }
    assigned[*var] = true;
    for (const auto& x : values) {
      pt[*var] = x;
      std::vector<FqPoly> sub;
      sub.reserve(sys.size());
      for (const auto& f : sys) sub.push_back(f.evaluate(*var, x));
      recurse(std::move(sub), assigned, pt);
    }
    assigned[*var] = false;
  }

  void enumerate_free(const std::vector<std::size_t>& free, std::size_t i, FqPoint& pt) {
    if (i == 0) budget_.charge(ipow(F_.order(), static_cast<unsigned long>(free.size())));
    if (i == free.size()) {
      out_.push_back(pt);
      return;
    }
    const std::uint64_t q = F_.order().get_ui();
    for (std::uint64_t j = 0; j < q; ++j) {
      pt[free[i]] = F_.element(j);
      enumerate_free(free, i + 1, pt);
    }
  }

  // A nonzero univariate polynomial in `target` vanishing on the projection
  // of the zero set, built by pairwise resultants.
  std::optional<UPoly> eliminate_to(std::vector<FqPoly> sys, std::size_t target, const std::vector<std::size_t>& free) {
    for (std::size_t w : free) {
      if (w == target) continue;
      std::vector<FqPoly> with, without;
      for (auto& f : sys) (f.uses_var(w) ? with : without).push_back(std::move(f));
      if (with.size() >= 2) {
        std::sort(with.begin(), with.end(), [&](const FqPoly& a, const FqPoly& b) {
          const auto da = a.degree_in(w), db = b.degree_in(w);
          if (da != db) return da < db;
          return a.size() < b.size();
        });
        std::size_t produced = 0;
        for (std::size_t j = 1; j < with.size() && produced < 2; ++j) {
          auto r = resultant(with[0], with[j], w);
          if (r.is_zero()) continue;
          if (r.is_constant()) return UPoly{r.constant_value()};
          without.push_back(std::move(r));
          ++produced;
        }
      }
      sys = std::move(without);
      for (const auto& f : sys) {
        if (f.is_constant() && !f.is_zero()) return UPoly{f.constant_value()};
      }
    }
    std::optional<UPoly> g;
    for (const auto& f : sys) {
      if (f.is_zero() || !only_var(f, target)) continue;
      g = g ? upoly::gcd(F_, *g, to_upoly(f, target)) : to_upoly(f, target);
    }
    return g;
  }

  const FqTower& F_;
  std::size_t m_;
  Budget& budget_;
  std::uint64_t seed_;
  std::vector<FqPoint> out_;
};

}  // namespace detail

/// Zeros in F_{p^e}^m of an integer system, sorted lexicographically.
inline std::vector<FqPoint> find_points(const std::vector<IntPoly>& sys, std::size_t m, const FqTower& F,
                                        Budget& budget, Engine engine = Engine::solver, std::uint64_t seed = 0) {
  auto red = reduce_system(sys, F);
  if (engine == Engine::exhaustive) return enumerate_exhaustive(red, m, F, budget);
  return detail::Solver(F, m, budget, seed).solve(red);
}

/// Reference enumeration over F_{p^e}^m.
inline std::vector<FqPoint> enumerate_points(const std::vector<IntPoly>& sys, std::size_t m, std::uint64_t p,
                                             unsigned e, std::uint64_t budget_limit = kDefaultBudget) {
  FqTower F(p, e);
  Budget b(budget_limit);
  return find_points(sys, m, F, b, Engine::exhaustive);
}

struct PointCount {
  Integer total;               // distinct zeros of degree <= E
  std::vector<Integer> N;      // N[e-1] = zeros in F_{p^e}^m
  std::vector<Integer> M;      // M[e-1] = zeros of exact degree e
};

inline void check_not_all_zero(const std::vector<IntPoly>& sys, std::uint64_t p) {
  if (sys.empty()) throw input_error("empty system");
  bool any = false;
  for (const auto& f : sys)
    if (!reduce_mod_p(f, p).is_zero()) any = true;
  if (!any) throw input_error("every generator vanishes identically mod " + std::to_string(p));
}

/// Number of distinct zeros in (F_p-bar)^m of degree at most E, by Moebius
/// inversion over the subfield counts N(e).
inline PointCount count_points_fqbar(const std::vector<IntPoly>& sys, std::size_t m, std::uint64_t p, unsigned E,
                                     Engine engine = Engine::solver, std::uint64_t budget_limit = kDefaultBudget,
                                     unsigned modulus_alt = 0, std::uint64_t seed = 0) {
  if (!is_prime(p)) throw input_error("p is not prime");
  if (E < 1) throw input_error("degree cap must be at least 1");
  check_not_all_zero(sys, p);
  Budget budget(budget_limit);
  PointCount pc;
  for (unsigned e = 1; e <= E; ++e) {
    FqTower F(p, e, e > 1 ? modulus_alt : 0);
    pc.N.push_back(static_cast<unsigned long>(find_points(sys, m, F, budget, engine, seed).size()));
  }
  pc.total = 0;
  for (unsigned e = 1; e <= E; ++e) {
    Integer me = 0;
    for (auto f : divisors(e)) me += mobius(e / f) * pc.N[f - 1];
    pc.M.push_back(me);
    pc.total += me;
  }
  return pc;
}

/// The same count by listing zeros inside F_{p^L}, L = lcm(1..E), and keeping
/// those whose coordinates generate a field of degree <= E.
inline Integer count_points_dedup(const std::vector<IntPoly>& sys, std::size_t m, std::uint64_t p, unsigned E,
                                  Engine engine = Engine::exhaustive, std::uint64_t budget_limit = kDefaultBudget) {
  const auto L = lcm_range(E);
  if (L > kMaxExtension) throw budget_exceeded("common field degree too large");
  check_not_all_zero(sys, p);
  FqTower F(p, static_cast<unsigned>(L));
  Budget budget(budget_limit);
  Integer n = 0;
  for (const auto& pt : find_points(sys, m, F, budget, engine)) {
    std::uint64_t deg = 1;
    for (const auto& x : pt) deg = std::lcm<std::uint64_t>(deg, F.element_degree(x));
    if (deg <= E) ++n;
  }
  return n;
}

/// Value of R at a point, or nullopt at a pole. A denominator that vanishes
/// identically mod p is an input error.
inline std::optional<FqElem> eval_ratfunc_mod(const RatFunc& r, const FqPoint& pt, const FqTower& F) {
  const auto den = reduce_to_fq(r.den(), F);
  if (den.is_zero()) throw input_error("denominator vanishes identically mod " + std::to_string(F.p()));
  const auto dv = den.eval(pt);
  if (F.is_zero(dv)) return std::nullopt;
  return F.mul(reduce_to_fq(r.num(), F).eval(pt), F.inv(dv));
}

}  // namespace modred
