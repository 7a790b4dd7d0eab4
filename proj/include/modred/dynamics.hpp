#pragma once

// Iterates of rational systems over Q, pointwise orbits over F_q and Q,
// k-periodic points mod p, and the triangular / monomial-escape families.

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "modred/points.hpp"
#include "modred/sysparse.hpp"

namespace modred {

struct DynSystem {
  std::size_t m = 0;
  std::vector<RatFunc> functions;

  bool polynomial() const {
    return std::all_of(functions.begin(), functions.end(), [](const RatFunc& r) { return r.is_polynomial(); });
  }
  std::int64_t degree() const {
    std::int64_t d = 0;
    for (const auto& r : functions) d = std::max(d, r.degree());
    return d;
  }

  static DynSystem from_maps(std::vector<RatFunc> fs) {
    DynSystem s;
    s.m = fs.size();
    for (const auto& r : fs)
      if (r.nvars() != s.m) throw input_error("every function must use the system's variables");
    s.functions = std::move(fs);
    return s;
  }
  static DynSystem from_file(const SystemFile& f) { return from_maps(as_rational_maps(f)); }
  static DynSystem from_polys(const std::vector<IntPoly>& fs) {
    std::vector<RatFunc> r;
    for (const auto& f : fs) r.push_back(RatFunc::from_poly(f));
    return from_maps(std::move(r));
  }
};

/// R^(j) for j = 1..k; out[j-1] is the j-th iterate.
inline std::vector<DynSystem> iterates(const DynSystem& s, long k) {
  if (k < 1) throw input_error("k must be at least 1");
  std::vector<DynSystem> out{s};
  for (long j = 2; j <= k; ++j) {
    std::vector<RatFunc> next;
    for (const auto& r : s.functions) next.push_back(compose(r, out.back().functions));
    out.push_back(DynSystem::from_maps(std::move(next)));
  }
  return out;
}

inline DynSystem iterate(const DynSystem& s, long k) { return iterates(s, k).back(); }

// ---------------------------------------------------------------------------
// Orbits

enum class OrbitStatus { terminated_by_pole, entered_cycle, step_cap };

inline const char* to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::terminated_by_pole: return "terminated-by-pole";
    case OrbitStatus::entered_cycle: return "entered-cycle";
    case OrbitStatus::step_cap: return "step-cap";
  }
  return "?";
}

template <class Point>
struct OrbitRecord {
  std::vector<Point> points;  // distinct orbit points in order
  OrbitStatus status = OrbitStatus::step_cap;
  std::size_t tail_length = 0;
  std::size_t cycle_length = 0;

  std::size_t T() const { return points.size(); }
};

struct FqPointHash {
  std::size_t operator()(const FqPoint& pt) const noexcept {
    std::size_t h = 0x12345;
    for (const auto& x : pt) h = h * 1000003u ^ FqElemHash{}(x);
    return h;
  }
};

/// A system reduced mod p, applied pointwise in F_q.
class ReducedSystem {
 public:
  ReducedSystem(const DynSystem& s, const FqTower& F) : F_(F), m_(s.m) {
    for (const auto& r : s.functions) {
      num_.push_back(reduce_to_fq(r.num(), F));
      den_.push_back(reduce_to_fq(r.den(), F));
      if (den_.back().is_zero())
        throw input_error("denominator vanishes identically mod " + std::to_string(F.p()));
    }
  }

  const FqTower& field() const { return F_; }
  std::size_t m() const { return m_; }

  /// R(pt), or nullopt if pt is a pole.
  std::optional<FqPoint> apply(const FqPoint& pt) const {
    FqPoint out(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const auto d = den_[i].eval(pt);
      if (F_.is_zero(d)) return std::nullopt;
      out[i] = F_.mul(num_[i].eval(pt), F_.inv(d));
    }
    return out;
  }

 private:
  FqTower F_;
  std::size_t m_;
  std::vector<FqPoly> num_, den_;
};

/// Pointwise orbit of w; stops at a pole, on the first repeated point, or
/// after step_cap applications.
inline OrbitRecord<FqPoint> orbit(const ReducedSystem& R, const FqPoint& w, std::size_t step_cap) {
  OrbitRecord<FqPoint> rec;
  std::unordered_map<FqPoint, std::size_t, FqPointHash> seen;
  FqPoint cur = w;
  rec.points.push_back(cur);
  seen.emplace(cur, 0);
  for (std::size_t step = 0; step < step_cap; ++step) {
    auto nxt = R.apply(cur);
    if (!nxt) {
      rec.status = OrbitStatus::terminated_by_pole;
      return rec;
    }
    auto it = seen.find(*nxt);
    if (it != seen.end()) {
      rec.status = OrbitStatus::entered_cycle;
      rec.tail_length = it->second;
      rec.cycle_length = rec.points.size() - it->second;
      return rec;
    }
    seen.emplace(*nxt, rec.points.size());
    rec.points.push_back(*nxt);
    cur = std::move(*nxt);
  }
  rec.status = OrbitStatus::step_cap;
  return rec;
}

using QPoint = std::vector<Rational>;

inline Rational eval_rational(const IntPoly& f, const QPoint& pt) {
  Rational acc = 0;
  for (const auto& t : f.terms()) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < pt.size(); ++i)
      for (std::uint32_t k = 0; k < t.exps[i]; ++k) v *= pt[i];
    acc += v;
  }
  return acc;
}

inline std::optional<QPoint> apply_rational(const DynSystem& s, const QPoint& pt) {
  QPoint out(s.m);
  for (std::size_t i = 0; i < s.m; ++i) {
    const Rational d = eval_rational(s.functions[i].den(), pt);
    if (sgn(d) == 0) return std::nullopt;
    out[i] = eval_rational(s.functions[i].num(), pt) / d;
  }
  return out;
}

/// Exact orbit over Q.
inline OrbitRecord<QPoint> orbit_rational(const DynSystem& s, const QPoint& w, std::size_t step_cap) {
  OrbitRecord<QPoint> rec;
  std::map<QPoint, std::size_t> seen;
  rec.points.push_back(w);
  seen.emplace(w, 0);
  QPoint cur = w;
  for (std::size_t step = 0; step < step_cap; ++step) {
    auto nxt = apply_rational(s, cur);
    if (!nxt) {
      rec.status = OrbitStatus::terminated_by_pole;
      return rec;
    }
    auto it = seen.find(*nxt);
    if (it != seen.end()) {
      rec.status = OrbitStatus::entered_cycle;
      rec.tail_length = it->second;
      rec.cycle_length = rec.points.size() - it->second;
      return rec;
    }
    seen.emplace(*nxt, rec.points.size());
    rec.points.push_back(*nxt);
    cur = std::move(*nxt);
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Periodic points

/// Degree over F_p of the field generated by the coordinates.
inline unsigned point_degree(const FqTower& F, const FqPoint& pt) {
  unsigned d = 1;
  for (const auto& x : pt) d = std::lcm(d, F.element_degree(x));
  return d;
}

/// V_k: polynomial systems give F_i^(k) - X_i in X_1..X_m. Otherwise the
/// variables are X_1..X_m, X_0 (X_0 last) and the equations are
/// F_{i,k} - X_i G_{i,k} and 1 - X_0 prod_{i,j<=k} G_{i,j}.
/// With require_zero_dimensional, an identically vanishing equation is rejected.
inline std::vector<IntPoly> build_periodicity_system(const DynSystem& s, long k, bool require_zero_dimensional = true) {
  const auto its = iterates(s, k);
  const std::size_t m = s.m;
  std::vector<IntPoly> out;
  if (s.polynomial()) {
    for (std::size_t i = 0; i < m; ++i) out.push_back(its.back().functions[i].num() - IntPoly::variable(m, i));
  } else {
    std::vector<std::size_t> map(m);
    std::iota(map.begin(), map.end(), 0);
    auto lift = [&](const IntPoly& f) { return f.remap(m + 1, map); };
    for (std::size_t i = 0; i < m; ++i) {
      const auto& r = its.back().functions[i];
      out.push_back(lift(r.num()) - IntPoly::variable(m + 1, i) * lift(r.den()));
    }
    IntPoly prod = IntPoly::one(m + 1);
    for (const auto& it : its)
      for (const auto& r : it.functions) prod *= lift(r.den());
    out.push_back(IntPoly::one(m + 1) - IntPoly::variable(m + 1, m) * prod);
  }
  for (std::size_t i = 0; i < m && require_zero_dimensional; ++i)
    if (out[i].is_zero())
      throw input_error("periodicity system is not zero-dimensional: equation " + std::to_string(i + 1) +
                        " vanishes identically");
  return out;
}

struct PeriodicPoints {
  // by_degree[e-1]: points of exact degree e, coordinates in F_{p^e} (alt 0 modulus).
  std::vector<std::vector<FqPoint>> by_degree;
  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& v : by_degree) n += v.size();
    return n;
  }
};

/// Route (a): scan every point of F_{p^e}^m and apply R pointwise k times.
inline PeriodicPoints periodic_points_scan(const DynSystem& s, long k, std::uint64_t p, unsigned degree_cap,
                                           Budget& budget) {
  if (k < 1) throw input_error("k must be at least 1");
  PeriodicPoints out;
  for (unsigned e = 1; e <= degree_cap; ++e) {
    FqTower F(p, e);
    ReducedSystem R(s, F);
    budget.charge(ipow(F.order(), static_cast<unsigned long>(s.m)) * k);
    const std::uint64_t q = F.order().get_ui();
    std::vector<FqPoint> found;
    std::vector<std::uint64_t> idx(s.m, 0);
    FqPoint pt(s.m, F.zero());
    for (bool more = true; more;) {
      if (point_degree(F, pt) == e) {
        FqPoint cur = pt;
        bool ok = true;
        for (long j = 0; j < k && ok; ++j) {
          auto nxt = R.apply(cur);
          if (!nxt) ok = false;
          else cur = std::move(*nxt);
        }
        if (ok && cur == pt) found.push_back(pt);
      }
      more = false;
      for (std::size_t c = s.m; c-- > 0;) {
        if (++idx[c] < q) {
          pt[c] = F.element(idx[c]);
          more = true;
          break;
        }
        idx[c] = 0;
        pt[c] = F.zero();
      }
    }
    std::sort(found.begin(), found.end(), point_less);
    out.by_degree.push_back(std::move(found));
  }
  return out;
}

/// Route (b): zeros of the periodicity system with X_0 projected away.
inline PeriodicPoints periodic_points_variety(const DynSystem& s, long k, std::uint64_t p, unsigned degree_cap,
                                              Budget& budget, Engine engine = Engine::solver) {
  auto sys = build_periodicity_system(s, k, false);
  const std::size_t n = sys.back().nvars();
  std::erase_if(sys, [](const IntPoly& f) { return f.is_zero(); });
  if (sys.empty()) sys.push_back(IntPoly(n));
  PeriodicPoints out;
  for (unsigned e = 1; e <= degree_cap; ++e) {
    FqTower F(p, e);
    std::set<FqPoint, decltype(&point_less)> pts(&point_less);
    for (auto& pt : find_points(sys, n, F, budget, engine)) {
      pt.resize(s.m);
      if (point_degree(F, pt) == e) pts.insert(pt);
    }
    out.by_degree.emplace_back(pts.begin(), pts.end());
  }
  return out;
}

struct PeriodicResult {
  PeriodicPoints points;            // from the variety route
  std::optional<bool> routes_agree;  // nullopt when the scan was skipped
  bool positive_dimensional = false;  // some equation of V_k vanishes identically over Q
};

/// Route (b), cross-checked against route (a) whenever scanning F_{p^e}^m for
/// every e <= degree_cap fits in scan_limit steps.
inline PeriodicResult periodic_points(const DynSystem& s, long k, std::uint64_t p, unsigned degree_cap,
                                      std::uint64_t budget_limit = kDefaultBudget,
                                      std::uint64_t scan_limit = 2'000'000) {
  if (!is_prime(p)) throw input_error("p is not prime");
  if (degree_cap < 1 || degree_cap > kMaxExtension) throw input_error("degree cap out of range");
  if (k < 1) throw input_error("k must be at least 1");
  PeriodicResult r;
  Budget budget(budget_limit);
  r.points = periodic_points_variety(s, k, p, degree_cap, budget);
  Integer scan_cost = 0;
  for (unsigned e = 1; e <= degree_cap; ++e) scan_cost += ipow(ipow(Integer(p), e), static_cast<unsigned long>(s.m)) * k;
  if (scan_cost <= scan_limit) {
    Budget scan_budget(scan_limit);
    r.routes_agree = periodic_points_scan(s, k, p, degree_cap, scan_budget).by_degree == r.points.by_degree;
  }
  for (const auto& f : build_periodicity_system(s, k, false))
    if (f.is_zero()) r.positive_dimensional = true;
  return r;
}

/// Number of k-periodic points of degree <= degree_cap, by Moebius counting on V_k.
inline Integer count_periodic_points(const DynSystem& s, long k, std::uint64_t p, unsigned degree_cap,
                                     std::uint64_t budget_limit = kDefaultBudget) {
  auto sys = build_periodicity_system(s, k);
  const std::size_t n = sys[0].nvars();
  const auto pc = count_points_fqbar(sys, n, p, degree_cap, Engine::solver, budget_limit);
  return pc.total;
}

// ---------------------------------------------------------------------------
// Generators

/// Triangular system: F_i in Z[X_i..X_m] with main term g_i X_i prod_{j>i} X_j^{s_ij},
/// deg_{X_i} F_i = 1 and deg_{X_j} F_i = s_ij. s is m x m; only entries j > i are read.
inline DynSystem gen_triangular(std::size_t m, const std::vector<std::vector<unsigned>>& s, std::uint64_t seed) {
  if (m < 2) throw input_error("triangular systems need m >= 2");
  if (s.size() != m) throw input_error("exponent matrix must be m x m");
  for (const auto& row : s)
    if (row.size() != m) throw input_error("exponent matrix must be m x m");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3), coin(0, 1);
  auto nonzero = [&] {
    int c = 0;
    while (c == 0) c = coef(rng);
    return c;
  };
  std::vector<IntPoly> fs;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<IntPoly::Term> terms;
    Exponents main(m, 0);
    main[i] = 1;
    for (std::size_t j = i + 1; j < m; ++j) main[j] = s[i][j];
    terms.push_back({main, Integer(nonzero())});
    // Lower-order terms in X_{i+1}..X_m within the exponent box.
    Exponents box(m, 0);
    for (;;) {
      if (coin(rng)) terms.push_back({box, Integer(nonzero())});
      std::size_t j = m;
      bool carried = true;
      while (carried && j > i + 1) {
        --j;
        if (box[j] < s[i][j]) {
          ++box[j];
          carried = false;
        } else {
          box[j] = 0;
        }
      }
      if (carried) break;
    }
    auto f = IntPoly::from_terms(m, std::move(terms));
    if (f.degree_in(i) != 1) throw invariant_violation("triangular generator lost its X_i term");
    fs.push_back(std::move(f));
  }
  return DynSystem::from_polys(fs);
}

struct MonomialEscape {
  std::size_t s = 0;
  std::vector<unsigned long> d, e;
  std::vector<std::vector<long>> A;  // s x m Vandermonde
  DynSystem system;                  // X_i -> X_i^{e_i}
  std::vector<IntPoly> variety;      // P_j = sum_i a_{j,i} X_i^{d_i}
};

inline constexpr unsigned long kExponentSearchCap = 100000;

/// m = 2s. d: lexicographically least strictly decreasing pairwise-coprime
/// tuple; e: greedy from e_m upward, e_m > d_1^s, keeping gcd(d_i e_i, d_j e_j) = 1.
inline MonomialEscape gen_monomial_escape(std::size_t s) {
  if (s < 1) throw input_error("s must be at least 1");
  const std::size_t m = 2 * s;
  MonomialEscape out;
  out.s = s;
  std::vector<unsigned long> d;
  std::function<bool(std::size_t, unsigned long)> pick = [&](std::size_t left, unsigned long below) -> bool {
    if (left == 0) return true;
    for (unsigned long v = left; v < below; ++v) {
      bool ok = true;
      for (auto x : d) ok = ok && std::gcd(x, v) == 1;
      if (!ok) continue;
      d.push_back(v);
      if (pick(left - 1, v)) return true;
      d.pop_back();
    }
    return false;
  };
  for (unsigned long top = m; top < kExponentSearchCap && d.empty(); ++top) {
    d = {top};
    if (!pick(m - 1, top)) d.clear();
  }
  if (d.size() != m) throw invariant_violation("exponent search cap reached");
  const unsigned long floor = static_cast<unsigned long>(ipow(Integer(d[0]), s).get_ui());
  std::vector<unsigned long> e(m, 0);
  unsigned long next = floor + 1;
  for (std::size_t i = m; i-- > 0;) {
    for (unsigned long v = next;; ++v) {
      if (v > floor + kExponentSearchCap) throw invariant_violation("exponent search cap reached");
      bool ok = true;
      for (std::size_t j = 0; j < m && ok; ++j) {
        if (j == i) continue;
        const unsigned long other = j > i ? d[j] * e[j] : d[j];
        ok = std::gcd(d[i] * v, other) == 1;
      }
      if (ok) {
        e[i] = v;
        next = v + 1;
        break;
      }
    }
  }
  out.d = d;
  out.e = e;
  std::vector<IntPoly> maps;
  for (std::size_t i = 0; i < m; ++i) {
    Exponents ex(m, 0);
    ex[i] = static_cast<std::uint32_t>(e[i]);
    maps.push_back(IntPoly::from_terms(m, {{ex, Integer(1)}}));
  }
  out.system = DynSystem::from_polys(maps);
  for (std::size_t j = 0; j < s; ++j) {
    std::vector<long> row;
    std::vector<IntPoly::Term> terms;
    for (std::size_t i = 0; i < m; ++i) {
      const long a = static_cast<long>(ipow(Integer(static_cast<unsigned long>(i + 1)), j).get_si());
      row.push_back(a);
      Exponents ex(m, 0);
      ex[i] = static_cast<std::uint32_t>(d[i]);
      terms.push_back({ex, Integer(a)});
    }
    out.A.push_back(row);
    out.variety.push_back(IntPoly::from_terms(m, std::move(terms)));
  }
  return out;
}

/// Least-squares slope of log y against log k.
inline double fit_growth_exponent(const std::vector<std::pair<long, double>>& samples) {
  if (samples.size() < 2) throw input_error("need at least two samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [k, y] : samples) {
    if (k <= 0 || y <= 0) throw input_error("samples must be positive");
    const double lx = std::log(static_cast<double>(k)), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(samples.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct GrowthReport {
  std::vector<std::vector<long>> degrees;     // degrees[i][k-1] = deg F_i^(k)
  std::vector<std::vector<double>> heights;   // log max |coeff|
  std::vector<double> degree_exponent;        // fitted over the window
  std::vector<double> height_exponent;
};

/// Degrees and heights of F_i^(k), k = 1..k_max, with slopes fitted over [k_lo, k_max].
inline GrowthReport growth_fit(const DynSystem& s, long k_max, long k_lo = 6) {
  if (!s.polynomial()) throw input_error("growth fit expects a polynomial system");
  if (k_lo < 1 || k_lo >= k_max) throw input_error("fit window must satisfy 1 <= k_lo < k_max");
  GrowthReport g;
  g.degrees.assign(s.m, {});
  g.heights.assign(s.m, {});
  const auto its = iterates(s, k_max);
  for (long k = 1; k <= k_max; ++k)
    for (std::size_t i = 0; i < s.m; ++i) {
      const auto& f = its[k - 1].functions[i].num();
      g.degrees[i].push_back(std::max<long>(f.degree(), 0));
      g.heights[i].push_back(height(f).log_value);
    }
  for (std::size_t i = 0; i < s.m; ++i) {
    std::vector<std::pair<long, double>> ds, hs;
    for (long k = k_lo; k <= k_max; ++k) {
      ds.emplace_back(k, std::max(1.0, static_cast<double>(g.degrees[i][k - 1])));
      hs.emplace_back(k, std::max(1.0, g.heights[i][k - 1]));
    }
    g.degree_exponent.push_back(fit_growth_exponent(ds));
    g.height_exponent.push_back(fit_growth_exponent(hs));
  }
  return g;
}

}  // namespace modred
