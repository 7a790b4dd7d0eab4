#pragma once

// Finite fields F_{p^e} as F_p[x]/(f) with an explicit irreducible modulus,
// dense univariate polynomials over them, and root finding.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "modred/poly.hpp"
#include "modred/primes.hpp"

namespace modred {

inline constexpr std::size_t kMaxExtension = 16;

/// Element of F_{p^e}: coefficients of 1, x, ..., x^(e-1).
struct FqElem {
  std::array<std::uint32_t, kMaxExtension> c{};

  friend bool operator==(const FqElem&, const FqElem&) = default;
  /// Order by the base-p integer value of the coefficient string.
  friend std::strong_ordering operator<=>(const FqElem& a, const FqElem& b) {
    for (std::size_t i = kMaxExtension; i-- > 0;)
      if (a.c[i] != b.c[i]) return a.c[i] <=> b.c[i];
    return std::strong_ordering::equal;
  }
};

struct FqElemHash {
  std::size_t operator()(const FqElem& a) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : a.c) h = (h ^ v) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

using FpVec = std::vector<std::uint64_t>;

namespace detail {

inline void fp_trim(FpVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpVec fp_mulmod(const FpVec& a, const FpVec& b, const FpVec& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpVec t(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) t[i + j] = (t[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  const std::size_t n = f.size() - 1;
  const std::uint64_t inv_lead = powmod(f[n], p - 2, p);
  for (std::size_t k = t.size(); k-- > n;) {
    if (!t[k]) continue;
    const std::uint64_t q = mulmod(t[k], inv_lead, p);
    for (std::size_t i = 0; i <= n; ++i) t[k - n + i] = (t[k - n + i] + p - mulmod(q, f[i], p)) % p;
  }
  t.resize(std::min(t.size(), n));
  fp_trim(t);
  return t;
}

inline FpVec fp_rem(FpVec a, const FpVec& b, std::uint64_t p) {
  fp_trim(a);
  const std::size_t n = b.size() - 1;
  const std::uint64_t inv_lead = powmod(b[n], p - 2, p);
  while (a.size() >= b.size()) {
    const std::uint64_t q = mulmod(a.back(), inv_lead, p);
    const std::size_t s = a.size() - b.size();
    for (std::size_t i = 0; i <= n; ++i) a[s + i] = (a[s + i] + p - mulmod(q, b[i], p)) % p;
    fp_trim(a);
  }
  return a;
}

inline FpVec fp_gcd(FpVec a, FpVec b, std::uint64_t p) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    auto r = fp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Irreducibility of a monic polynomial of degree n over F_p by the
/// criterion gcd(x^(p^i) - x, f) = 1 for 1 <= i <= n/2.
inline bool fp_irreducible(const FpVec& f, std::uint64_t p) {
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  FpVec xp{0, 1};
  FpVec x{0, 1};
  for (std::size_t i = 1; i <= n / 2; ++i) {
    // xp <- xp^p mod f
    FpVec r{1};
    FpVec base = xp;
    for (std::uint64_t e = p; e; e >>= 1) {
      if (e & 1) r = fp_mulmod(r, base, f, p);
      if (e > 1) base = fp_mulmod(base, base, f, p);
    }
    xp = r;
    FpVec d = xp;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = (d[1] + p - 1) % p;
    fp_trim(d);
    auto g = fp_gcd(f, d, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

/// The field F_{p^e}. The modulus is the `alt`-th monic irreducible polynomial
/// of degree e in the scan order (constant coefficient varying fastest).
class FqTower {
 public:
  FqTower(std::uint64_t p, unsigned e, unsigned alt = 0) : p_(p), e_(e) {
    validate();
    if (e == 1) {
      modulus_ = {0, 1};
      return;
    }
    unsigned found = 0;
    FpVec f(e + 1, 0);
    f[e] = 1;
    for (;;) {
      if (f[0] != 0 && detail::fp_irreducible(f, p)) {
        if (found == alt) break;
        ++found;
      }
      std::size_t i = 0;
      while (i < e) {
        if (++f[i] < p) break;
        f[i++] = 0;
      }
      if (i == e) throw input_error("no irreducible polynomial found");
    }
    modulus_ = f;
  }

  FqTower(std::uint64_t p, FpVec modulus) : p_(p), e_(static_cast<unsigned>(modulus.size() - 1)) {
    validate();
    if (modulus.back() != 1) throw input_error("modulus must be monic");
    if (!detail::fp_irreducible(modulus, p)) throw input_error("modulus is reducible");
    modulus_ = std::move(modulus);
  }

  std::uint64_t p() const { return p_; }
  unsigned e() const { return e_; }
  const FpVec& modulus() const { return modulus_; }
  Integer order() const { return ipow(Integer(static_cast<unsigned long>(p_)), e_); }

  FqElem zero() const { return {}; }
  FqElem one() const {
    FqElem r;
    r.c[0] = 1;
    return r;
  }
  FqElem from_uint(std::uint64_t v) const {
    FqElem r;
    r.c[0] = static_cast<std::uint32_t>(v % p_);
    return r;
  }
  FqElem from_int(long v) const {
    long r = v % static_cast<long>(p_);
    return from_uint(static_cast<std::uint64_t>(r < 0 ? r + static_cast<long>(p_) : r));
  }
  FqElem from_integer(const Integer& v) const {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p_);
    return from_uint(r.get_ui());
  }
  /// The class of x (for e = 1 this is 0 + 1*x reduced, i.e. 0).
  FqElem generator() const {
    FqElem r;
    if (e_ > 1)
      r.c[1] = 1;
    else
      r.c[0] = static_cast<std::uint32_t>((p_ - modulus_[0]) % p_);
    return r;
  }

  bool is_zero(const FqElem& a) const { return a == FqElem{}; }
  bool is_one(const FqElem& a) const { return a == one(); }

  FqElem add(const FqElem& a, const FqElem& b) const {
    FqElem r;
    for (unsigned i = 0; i < e_; ++i) {
      std::uint64_t s = std::uint64_t{a.c[i]} + b.c[i];
      r.c[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    }
    return r;
  }
  FqElem sub(const FqElem& a, const FqElem& b) const {
    FqElem r;
    for (unsigned i = 0; i < e_; ++i)
      r.c[i] = static_cast<std::uint32_t>(a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + p_ - b.c[i]);
    return r;
  }
  FqElem neg(const FqElem& a) const {
    FqElem r;
    for (unsigned i = 0; i < e_; ++i) r.c[i] = static_cast<std::uint32_t>(a.c[i] ? p_ - a.c[i] : 0);
    return r;
  }
  FqElem mul(const FqElem& a, const FqElem& b) const {
    FqElem r;
    if (e_ == 1) {
      r.c[0] = static_cast<std::uint32_t>(std::uint64_t{a.c[0]} * b.c[0] % p_);
      return r;
    }
    std::array<std::uint64_t, 2 * kMaxExtension> t{};
    for (unsigned i = 0; i < e_; ++i) {
      if (!a.c[i]) continue;
      for (unsigned j = 0; j < e_; ++j) t[i + j] = (t[i + j] + std::uint64_t{a.c[i]} * b.c[j]) % p_;
    }
    for (unsigned k = 2 * e_ - 1; k-- > e_;) {
      if (!t[k]) continue;
      const std::uint64_t q = t[k];
      for (unsigned i = 0; i < e_; ++i)
        t[k - e_ + i] = (t[k - e_ + i] + (p_ - q) * modulus_[i]) % p_;
      t[k] = 0;
    }
    for (unsigned i = 0; i < e_; ++i) r.c[i] = static_cast<std::uint32_t>(t[i]);
    return r;
  }
  FqElem pow(FqElem a, const Integer& e) const {
    FqElem r = one();
    const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      r = mul(r, r);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
    }
    return r;
  }
  FqElem pow(FqElem a, std::uint64_t e) const {
    FqElem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }
  FqElem frobenius(const FqElem& a) const { return pow(a, p_); }

  FqElem inv(const FqElem& a) const {
    if (is_zero(a)) throw invariant_violation("inverse of zero in finite field");
    if (e_ == 1) return from_uint(powmod(a.c[0], p_ - 2, p_));
    // Extended Euclid in F_p[x] on (a, modulus).
    FpVec r0 = modulus_, r1 = to_vec(a);
    FpVec s0{}, s1{1};
    while (!r1.empty() && r1.size() > 1) {
      auto [q, r] = divrem(r0, r1);
      auto s2 = poly_sub(s0, poly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    const std::uint64_t c = powmod(r1[0], p_ - 2, p_);
    FqElem out;
    for (std::size_t i = 0; i < s1.size() && i < e_; ++i) out.c[i] = static_cast<std::uint32_t>(mulmod(s1[i], c, p_));
    return out;
  }

  /// Smallest f dividing e with a^(p^f) = a.
  unsigned element_degree(const FqElem& a) const {
    for (unsigned f = 1; f <= e_; ++f) {
      if (e_ % f) continue;
      FqElem b = a;
      for (unsigned i = 0; i < f; ++i) b = frobenius(b);
      if (b == a) return f;
    }
    return e_;
  }

  /// Element with base-p digits of `idx` as coefficients.
  FqElem element(std::uint64_t idx) const {
    FqElem r;
    for (unsigned i = 0; i < e_; ++i) {
      r.c[i] = static_cast<std::uint32_t>(idx % p_);
      idx /= p_;
    }
    return r;
  }

  std::string to_string(const FqElem& a) const {
    if (e_ == 1) return std::to_string(a.c[0]);
    std::string s = "[";
    for (unsigned i = 0; i < e_; ++i) s += (i ? "," : "") + std::to_string(a.c[i]);
    return s + "]";
  }

  bool operator==(const FqTower& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

 private:
  void validate() const {
    if (!is_prime(p_)) throw input_error("modulus p is not prime: " + std::to_string(p_));
    if (p_ >= (1ULL << 32)) throw input_error("p must be below 2^32");
    if (e_ < 1 || e_ > kMaxExtension) throw input_error("extension degree out of range");
  }
  FpVec to_vec(const FqElem& a) const {
    FpVec v(a.c.begin(), a.c.begin() + e_);
    detail::fp_trim(v);
    return v;
  }
  std::pair<FpVec, FpVec> divrem(FpVec a, const FpVec& b) const {
    detail::fp_trim(a);
    if (a.size() < b.size()) return {FpVec{}, a};
    FpVec q(a.size() - b.size() + 1, 0);
    const std::uint64_t il = powmod(b.back(), p_ - 2, p_);
    while (a.size() >= b.size()) {
      const std::uint64_t c = mulmod(a.back(), il, p_);
      const std::size_t s = a.size() - b.size();
      q[s] = c;
      for (std::size_t i = 0; i < b.size(); ++i) a[s + i] = (a[s + i] + p_ - mulmod(c, b[i], p_)) % p_;
      detail::fp_trim(a);
    }
    return {q, a};
  }
  FpVec poly_mul(const FpVec& a, const FpVec& b) const {
    if (a.empty() || b.empty()) return {};
    FpVec t(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) t[i + j] = (t[i + j] + mulmod(a[i], b[j], p_)) % p_;
    detail::fp_trim(t);
    return t;
  }
  FpVec poly_sub(FpVec a, const FpVec& b) const {
    a.resize(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p_ - b[i]) % p_;
    detail::fp_trim(a);
    return a;
  }

  std::uint64_t p_;
  unsigned e_;
  FpVec modulus_;
};

/// Ring descriptor so Poly<FqRing> works over F_{p^e}.
struct FqRing {
  using value_type = FqElem;
  static constexpr bool is_field = true;

  const FqTower* F = nullptr;

  value_type zero() const { return {}; }
  value_type one() const { return F->one(); }
  value_type from_int(long v) const { return F->from_int(v); }
  value_type from_integer(const Integer& v) const { return F->from_integer(v); }
  bool is_zero(const value_type& a) const { return a == FqElem{}; }
  bool is_one(const value_type& a) const { return F->is_one(a); }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  void add_to(value_type& a, const value_type& b) const { a = F->add(a, b); }
  void sub_from(value_type& a, const value_type& b) const { a = F->sub(a, b); }
  void addmul(value_type& acc, const value_type& a, const value_type& b) const { acc = F->add(acc, F->mul(a, b)); }
  value_type add(const value_type& a, const value_type& b) const { return F->add(a, b); }
  value_type sub(const value_type& a, const value_type& b) const { return F->sub(a, b); }
  value_type mul(const value_type& a, const value_type& b) const { return F->mul(a, b); }
  value_type neg(const value_type& a) const { return F->neg(a); }
  value_type pow(const value_type& a, unsigned long e) const { return F->pow(a, static_cast<std::uint64_t>(e)); }
  value_type inv(const value_type& a) const { return F->inv(a); }
  bool divides(const value_type& b, const value_type& a) const { return !is_zero(b) || is_zero(a); }
  value_type divexact(const value_type& a, const value_type& b) const { return F->mul(a, F->inv(b)); }
  value_type gcd(const value_type& a, const value_type& b) const {
    return (is_zero(a) && is_zero(b)) ? zero() : one();
  }
  value_type unit_of(const value_type& a) const { return is_zero(a) ? one() : a; }
  std::string to_string(const value_type& a) const { return F->to_string(a); }
  bool operator==(const FqRing& o) const { return F == o.F || (F && o.F && *F == *o.F); }
};

using FqPoly = Poly<FqRing>;

inline FqPoly reduce_to_fq(const IntPoly& f, const FqTower& F) {
  FqRing R{&F};
  return f.map_coeffs(R, [&](const Integer& c) { return F.from_integer(c); });
}

// Dense univariate polynomials over F_q, coefficient i multiplying x^i.
using UPoly = std::vector<FqElem>;

namespace upoly {

inline void trim(UPoly& a) {
  while (!a.empty() && a.back() == FqElem{}) a.pop_back();
}

inline std::int64_t deg(const UPoly& a) { return a.empty() ? kZeroDegree : static_cast<std::int64_t>(a.size()) - 1; }

inline UPoly add(const FqTower& F, UPoly a, const UPoly& b) {
  a.resize(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.add(a[i], b[i]);
  trim(a);
  return a;
}

inline UPoly sub(const FqTower& F, UPoly a, const UPoly& b) {
  a.resize(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
  trim(a);
  return a;
}

inline UPoly mul(const FqTower& F, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly t(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == FqElem{}) continue;
    for (std::size_t j = 0; j < b.size(); ++j) t[i + j] = F.add(t[i + j], F.mul(a[i], b[j]));
  }
  trim(t);
  return t;
}

/// Quotient and remainder; b nonzero.
inline std::pair<UPoly, UPoly> divrem(const FqTower& F, UPoly a, const UPoly& b) {
  trim(a);
  if (b.empty()) throw invariant_violation("division by zero polynomial");
  if (a.size() < b.size()) return {UPoly{}, a};
  UPoly q(a.size() - b.size() + 1);
  const FqElem il = F.inv(b.back());
  while (a.size() >= b.size()) {
    const FqElem c = F.mul(a.back(), il);
    const std::size_t s = a.size() - b.size();
    q[s] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[s + i] = F.sub(a[s + i], F.mul(c, b[i]));
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline UPoly rem(const FqTower& F, const UPoly& a, const UPoly& b) { return divrem(F, a, b).second; }

inline UPoly monic(const FqTower& F, UPoly a) {
  trim(a);
  if (a.empty()) return a;
  const FqElem il = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, il);
  return a;
}

inline UPoly gcd(const FqTower& F, UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, std::move(a));
}

inline UPoly mulmod(const FqTower& F, const UPoly& a, const UPoly& b, const UPoly& m) {
  return rem(F, mul(F, a, b), m);
}

inline UPoly powmod(const FqTower& F, UPoly base, const Integer& e, const UPoly& m) {
  UPoly r{F.one()};
  r = rem(F, r, m);
  base = rem(F, base, m);
  const auto bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mulmod(F, r, r, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(F, r, base, m);
  }
  return r;
}

inline FqElem eval(const FqTower& F, const UPoly& a, const FqElem& x) {
  FqElem acc{};
  for (std::size_t i = a.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a[i]);
  return acc;
}

namespace detail {

inline void split_linear(const FqTower& F, const UPoly& g, std::vector<FqElem>& out, std::mt19937_64& rng) {
  const auto d = deg(g);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(F.neg(F.mul(g[0], F.inv(g[1]))));
    return;
  }
  const Integer q = F.order();
  for (int attempt = 0; attempt < 256; ++attempt) {
    FqElem a;
    for (unsigned i = 0; i < F.e(); ++i) a.c[i] = static_cast<std::uint32_t>(rng() % F.p());
    UPoly h;
    if (F.p() == 2) {
      // Trace of a*x: sum of (a x)^(2^i), i < e.
      UPoly t = rem(F, UPoly{FqElem{}, a}, g);
      h = t;
      for (unsigned i = 1; i < F.e(); ++i) {
        t = mulmod(F, t, t, g);
        h = add(F, h, t);
      }
    } else {
      h = powmod(F, UPoly{a, F.one()}, (q - 1) / 2, g);
      h = sub(F, h, UPoly{F.one()});
    }
    auto f1 = gcd(F, g, h);
    const auto d1 = deg(f1);
    if (d1 > 0 && d1 < d) {
      split_linear(F, f1, out, rng);
      split_linear(F, divrem(F, g, f1).first, out, rng);
      return;
    }
  }
  throw invariant_violation("root splitting failed to make progress");
}

}  // namespace detail

/// Distinct roots in F_q of a nonzero polynomial, sorted.
inline std::vector<FqElem> roots(const FqTower& F, const UPoly& f, std::uint64_t seed = 0) {
  UPoly a = f;
  trim(a);
  if (a.empty()) throw input_error("roots of the zero polynomial");
  std::vector<FqElem> out;
  if (a.size() == 1) return out;
  a = monic(F, a);
  // g = gcd(f, x^q - x)
  UPoly xq = powmod(F, UPoly{FqElem{}, F.one()}, F.order(), a);
  UPoly g = gcd(F, a, sub(F, xq, UPoly{FqElem{}, F.one()}));
  if (deg(g) <= 0) return out;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  detail::split_linear(F, g, out, rng);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace upoly

}  // namespace modred
