#pragma once

// Degree and height bounds for eliminants, certificates, products,
// compositions and iterates. Log terms are evaluated with 50 significant
// digits. Where the exponential of a bound is an integer expression the
// envelope is also available as an exact integer inequality.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "modred/ring.hpp"

namespace modred {

using Real = boost::multiprecision::cpp_dec_float_50;

/// Absolute slack used when a computed log is compared against a bound.
inline const Real kLogSlack = Real("1e-9");

inline Real real_log(const Real& x) { return boost::multiprecision::log(x); }
inline Real real_log(long x) { return real_log(Real(x)); }

/// Natural log of a positive integer to 50 digits.
inline Real log_integer(const Integer& a) {
  if (sgn(a) <= 0) throw input_error("log of a non-positive integer");
  return real_log(Real(a.get_str()));
}

inline Real to_real(const Integer& a) { return Real(a.get_str()); }

inline Integer ipow_ul(unsigned long b, unsigned long e) { return ipow(Integer(b), e); }

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw input_error(what);
}

inline Real rpow(long d, long e) { return to_real(ipow_ul(static_cast<unsigned long>(d), static_cast<unsigned long>(e))); }

}  // namespace detail

// --- certificate bounds ------------------------------------------------------

inline long C1(long m) { return 11 * m + 4; }
inline Real C2(long m, long s) { return Real(55 * m + 99) * real_log((2 * m + 5) * s); }
inline long A1(long m) { return 10 * m + 4; }
inline Real A2(long m, long s) {
  return Real(54 * m + 98) * real_log(2 * m + 5) + Real(24 * (m + 1)) * real_log(std::max(1L, s - 2 * m));
}
inline long B1(long m) { return 2 * m; }
inline Real B2(long m) { return Real(2 * m + 4) * real_log(m + 1) + Real(4 * m + 2); }

inline void check_basic(long m, long s, long d, const Real& h) {
  detail::require(m >= 1, "m must be at least 1");
  detail::require(s >= 1, "s must be at least 1");
  detail::require(d >= 1, "d must be at least 1");
  detail::require(h >= 0, "h must be non-negative");
}

/// log of the bad-prime modulus: C1 d^(3m+1) h + C2 d^(3m+2).
inline Real theorem1_bound(long m, long s, long d, const Real& h) {
  check_basic(m, s, d, h);
  return Real(C1(m)) * detail::rpow(d, 3 * m + 1) * h + C2(m, s) * detail::rpow(d, 3 * m + 2);
}

inline Real alpha_bound(long m, long s, long d, const Real& h) {
  check_basic(m, s, d, h);
  return Real(A1(m)) * detail::rpow(d, m + std::min(s, 2 * m + 1)) * h +
         A2(m, s) * detail::rpow(d, m + std::min(s, 2 * m + 2));
}

inline Real beta_bound(long m, long d, const Real& h) {
  check_basic(m, 1, d, h);
  return Real(B1(m)) * detail::rpow(d, 2 * m - 1) * h + B2(m) * detail::rpow(d, 2 * m);
}

/// (degree bound d^m, height bound m d^(m-1) h + (m+1) d^m log(m+1)) for E_V.
inline std::pair<Integer, Real> eliminant_bounds(long m, long d, const Real& h) {
  check_basic(m, 1, d, h);
  return {ipow_ul(d, m), Real(m) * detail::rpow(d, m - 1) * h + Real(m + 1) * detail::rpow(d, m) * real_log(m + 1)};
}

/// (T <= d^m, sum of point heights <= m d^(m-1) (h + d log(m+1))).
inline std::pair<Integer, Real> bezout_T_and_height(long m, long d, const Real& h) {
  check_basic(m, 1, d, h);
  return {ipow_ul(d, m), Real(m) * detail::rpow(d, m - 1) * (h + Real(d) * real_log(m + 1))};
}

/// Arithmetic Bezout envelope for the height of Z cut by hypersurfaces of the
/// given degrees; degrees are sorted descending before use.
inline Real arith_bezout_bound(const Real& hZ, long degZ, long dimZ, long m, std::vector<long> degrees,
                               const Real& h) {
  detail::require(!degrees.empty(), "need at least one hypersurface");
  std::sort(degrees.rbegin(), degrees.rend());
  const long m0 = std::min({dimZ, m, static_cast<long>(degrees.size())});
  Real prod = 1, inv_sum = 0;
  for (long i = 0; i < m0; ++i) {
    detail::require(degrees[i] >= 1, "degrees must be positive");
    prod *= degrees[i];
    inv_sum += Real(1) / Real(degrees[i]);
  }
  return prod * (hZ + inv_sum * h * Real(degZ) + Real(m0) * real_log(m + 1) * Real(degZ));
}

// --- compositions and iterates ----------------------------------------------

enum class CompositionKind { poly_general, poly_same_vars, rational };

inline CompositionKind parse_composition_kind(const std::string& s) {
  if (s == "poly-general") return CompositionKind::poly_general;
  if (s == "poly-same-vars") return CompositionKind::poly_same_vars;
  if (s == "rational") return CompositionKind::rational;
  throw input_error("unknown composition kind '" + s + "'");
}

struct DegHeight {
  Integer degree;
  Real height;
};

/// F of degree degF and height hF composed with maps of degree <= d and
/// height <= h in m variables; ell is the number of substituted slots for the
/// general polynomial case.
inline DegHeight composition_bounds(CompositionKind kind, long degF, const Real& hF, long d, const Real& h, long m,
                                    long ell = 1) {
  detail::require(degF >= 0 && d >= 0 && m >= 1 && ell >= 1, "parameter out of range");
  detail::require(h >= 0 && hF >= 0, "heights must be non-negative");
  switch (kind) {
    case CompositionKind::poly_general:
      return {Integer(d) * degF, hF + Real(degF) * (h + real_log(ell + 1) + Real(d) * real_log(m + 1))};
    case CompositionKind::poly_same_vars:
      return {Integer(d) * degF, hF + h * Real(degF) + Real((d + 1) * degF) * real_log(m + 1)};
    case CompositionKind::rational:
      return {Integer(d) * m * degF, hF + h * Real(degF) + Real((3 * d * m + 1) * degF) * real_log(m + 1)};
  }
  throw input_error("unknown composition kind");
}

enum class MapKind { poly, rational };

inline MapKind parse_map_kind(const std::string& s) {
  if (s == "poly") return MapKind::poly;
  if (s == "rational") return MapKind::rational;
  throw input_error("unknown kind '" + s + "'");
}

/// Integer exponents (a, b) with exp(height bound) = H^a (m+1)^b for the k-th
/// iterate of maps of degree <= d and height log H.
struct IterateExponents {
  Integer degree;
  Integer h_exp;
  Integer log_exp;
};

inline IterateExponents iterate_exponents(MapKind kind, long d, long m, long k) {
  detail::require(k >= 1 && m >= 1 && d >= 1, "parameter out of range");
  if (kind == MapKind::poly) {
    detail::require(d >= 2, "polynomial iterate bound needs d >= 2");
    const Integer dk = ipow_ul(d, k);
    const Integer geo = (dk - 1) / (d - 1);
    const Integer geo1 = (ipow_ul(d, k - 1) - 1) / (d - 1);
    return {dk, geo, Integer(d) * (d + 1) * geo1};
  }
  detail::require(d >= 2 || m >= 2, "rational iterate bound needs d >= 2 or m >= 2");
  const long x = d * m;
  const Integer S = (ipow_ul(x, k - 1) - 1) / (x - 1);
  return {ipow_ul(d, k) * ipow_ul(m, k - 1), 1 + Integer(d) * S, Integer(d) * (3 * d * m + 1) * S};
}

inline DegHeight iterate_bounds(MapKind kind, long d, long m, long k, const Real& h) {
  detail::require(h >= 0, "h must be non-negative");
  const auto e = iterate_exponents(kind, d, m, k);
  return {e.degree, to_real(e.h_exp) * h + to_real(e.log_exp) * real_log(m + 1)};
}

struct CycleBounds {
  Integer count;
  Real log_modulus;  // theorem1_bound on the periodicity system
  long system_vars;
  long system_size;
  Integer system_degree;
  Real system_height;
};

/// Periodic-point count bound and the explicit log-modulus obtained by feeding
/// the degree/height of the periodicity system into theorem1_bound.
inline CycleBounds cycle_bounds(MapKind kind, long d, long m, long k, const Real& h) {
  detail::require(d >= 2 && m >= 2, "cycle bounds need d >= 2 and m >= 2");
  detail::require(k >= 1, "k must be at least 1");
  detail::require(h >= 0, "h must be non-negative");
  CycleBounds out;
  const auto it = iterate_bounds(kind, d, m, k, h);
  if (kind == MapKind::poly) {
    out.count = ipow_ul(d, k * m);
    out.system_vars = m;
    out.system_size = m;
    out.system_degree = ipow_ul(d, k);
    out.system_height = it.height + real_log(2);
  } else {
    const Integer dm_k = ipow_ul(d * m, k);
    out.count = ipow(Integer(2 * ipow_ul(m, k) * ipow_ul(d, k)), static_cast<unsigned long>(m + 1));
    out.system_vars = m + 1;
    out.system_size = m + 1;
    out.system_degree = std::max<Integer>(ipow_ul(d, k) * ipow_ul(m, k - 1) + 1, 2 * dm_k);
    const Real log_m1 = real_log(m + 1);
    Real prod_h = Real(2) * to_real(dm_k) * log_m1;
    if (k >= 2) {
      prod_h += Real(m) * (Real(4 * d) * to_real(ipow_ul(d * m, k - 2)) * h +
                           Real(2 * d * (3 * d * m + 1)) * to_real(ipow_ul(d * m, k - 1)) * log_m1);
    } else {
      prod_h += Real(m) * h;
    }
    out.system_height = std::max(it.height + real_log(2), prod_h);
  }
  if (!out.system_degree.fits_slong_p()) throw budget_exceeded("system degree too large to evaluate");
  out.log_modulus = theorem1_bound(out.system_vars, out.system_size, out.system_degree.get_si(), out.system_height);
  return out;
}

/// D^s (D d^r m^(r-1))^s ((d^r m^(r-1))^m + 1).
inline Integer bezout_escape_count(long D, long s, long d, long m, long r) {
  detail::require(s >= 1, "need at least one variety equation");
  detail::require(r >= 1 && D >= 1 && d >= 1 && m >= 1, "parameter out of range");
  const Integer dr = ipow_ul(d, r) * ipow_ul(m, r - 1);
  return ipow(Integer(D), s) * ipow(Integer(D) * dr, s) * (ipow(dr, m) + 1);
}

/// floor(2L/eps) + 1 with eps given as an exact rational.
inline Integer uml_M(const Rational& eps, long L) {
  detail::require(L >= 1, "L must be at least 1");
  detail::require(eps > 0 && eps <= 1, "eps must lie in (0, 1]");
  Rational q = Rational(2 * L) / eps;
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f + 1;
}

// --- exact envelope checks ---------------------------------------------------

/// lhs <= c * H^a * base^b.
inline bool exp_envelope(const Integer& lhs, const Integer& c, const Integer& H, const Integer& a, unsigned long base,
                         const Integer& b) {
  if (!a.fits_ulong_p() || !b.fits_ulong_p()) throw budget_exceeded("envelope exponent too large");
  return lhs <= c * ipow(H, a.get_ui()) * ipow(Integer(base), b.get_ui());
}

/// Product envelope: with P = prod F_i, M(.) the max |coeff| and S = sum deg F_i,
/// prod M(F_i) <= M(P) (m+1)^(2S) and M(P) <= prod M(F_i) (m+1)^S.
inline bool product_envelope_holds(const Integer& prod_max, const std::vector<Integer>& factor_max, long deg_sum,
                                   long m) {
  Integer pm = 1;
  for (const auto& x : factor_max) pm *= x;
  const Integer w = ipow_ul(m + 1, deg_sum);
  return pm <= prod_max * w * w && prod_max <= pm * w;
}

/// M(sum of s polys) <= s * max M(F_i).
inline bool sum_envelope_holds(const Integer& sum_max, const std::vector<Integer>& term_max) {
  Integer mx = 0;
  for (const auto& x : term_max) mx = std::max(mx, x);
  return sum_max <= mx * static_cast<unsigned long>(term_max.size());
}

}  // namespace modred
