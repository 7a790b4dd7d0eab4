#pragma once

// Coefficient rings for Poly<Ring>. A ring descriptor is a small value type
// carrying whatever context its elements need (the modulus for F_p) and
// exposing the arithmetic as member functions.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

#include "modred/errors.hpp"

namespace modred {

using Integer = mpz_class;
using Rational = mpq_class;

/// Natural logarithm of |a| for a != 0, accurate to double precision for
/// integers of any size.
inline double log_abs(const Integer& a) {
  if (sgn(a) == 0) throw input_error("log of zero");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, a.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Integer ipow(const Integer& base, const Integer& e) {
  if (!e.fits_ulong_p()) throw budget_exceeded("exponent too large for exact power");
  return ipow(base, e.get_ui());
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// The integers.
struct IntegerRing {
  using value_type = Integer;
  static constexpr bool is_field = false;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long v) const { return v; }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  void add_to(value_type& a, const value_type& b) const { a += b; }
  void sub_from(value_type& a, const value_type& b) const { a -= b; }
  void addmul(value_type& acc, const value_type& a, const value_type& b) const {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type pow(const value_type& a, unsigned long e) const { return ipow(a, e); }

  bool divides(const value_type& b, const value_type& a) const {
    if (sgn(b) == 0) return sgn(a) == 0;
    return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
  }
  value_type divexact(const value_type& a, const value_type& b) const {
    if (!divides(b, a)) throw invariant_violation("inexact integer division");
    value_type q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  value_type gcd(const value_type& a, const value_type& b) const { return modred::gcd(a, b); }
  /// Unit u with a/u in normal form (positive).
  value_type unit_of(const value_type& a) const { return sgn(a) < 0 ? -1 : 1; }

  std::string to_string(const value_type& a) const { return a.get_str(); }
  bool operator==(const IntegerRing&) const { return true; }
};

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

/// The prime field F_p, elements stored as residues in [0, p).
struct PrimeField {
  using value_type = std::uint64_t;
  static constexpr bool is_field = true;

  std::uint64_t p = 2;

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p; }
  value_type from_int(long v) const {
    long r = v % static_cast<long>(p);
    return static_cast<value_type>(r < 0 ? r + static_cast<long>(p) : r);
  }
  value_type from_integer(const Integer& v) const {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
    return r.get_ui();
  }

  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }
  bool equal(value_type a, value_type b) const { return a == b; }

  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p ? s - p : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p - b; }
  value_type mul(value_type a, value_type b) const { return mulmod(a, b, p); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type pow(value_type a, unsigned long e) const { return powmod(a, e, p); }
  void add_to(value_type& a, value_type b) const { a = add(a, b); }
  void sub_from(value_type& a, value_type b) const { a = sub(a, b); }
  void addmul(value_type& acc, value_type a, value_type b) const { acc = add(acc, mul(a, b)); }

  value_type inv(value_type a) const {
    if (a == 0) throw invariant_violation("inverse of zero in F_p");
    return powmod(a, p - 2, p);
  }
  bool divides(value_type b, value_type a) const { return b != 0 || a == 0; }
  value_type divexact(value_type a, value_type b) const { return mul(a, inv(b)); }
  value_type gcd(value_type a, value_type b) const { return (a != 0 || b != 0) ? 1 : 0; }
  value_type unit_of(value_type a) const { return a == 0 ? 1 : a; }

  std::string to_string(value_type a) const { return std::to_string(a); }
  bool operator==(const PrimeField& o) const { return p == o.p; }
};

}  // namespace modred
