#pragma once

// Sparse multivariate polynomials over a coefficient ring descriptor.
// Terms are kept sorted in decreasing graded-lexicographic order with no
// zero coefficients, so structural equality is polynomial equality.

#include <boost/container/small_vector.hpp>
#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modred/errors.hpp"
#include "modred/ring.hpp"

namespace modred {

using Exponents = boost::container::small_vector<std::uint32_t, 6>;

/// Degree reported for the zero polynomial.
inline constexpr std::int64_t kZeroDegree = std::numeric_limits<std::int64_t>::min();

inline std::uint64_t exponent_sum(const Exponents& e) {
  std::uint64_t s = 0;
  for (auto x : e) s += x;
  return s;
}

/// Graded lexicographic comparison, x1 > x2 > ... ; returns <0, 0, >0.
inline int grlex_cmp(const Exponents& a, const Exponents& b) {
  const auto da = exponent_sum(a), db = exponent_sum(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    return boost::hash_range(e.begin(), e.end());
  }
};

template <class Ring>
class Poly {
 public:
  using ring_type = Ring;
  using coeff_type = typename Ring::value_type;

  struct Term {
    Exponents exps;
    coeff_type coeff;
  };

  Poly() = default;
  explicit Poly(std::size_t nvars, Ring ring = Ring{}) : ring_(std::move(ring)), nvars_(nvars) {}

  static Poly constant(std::size_t nvars, coeff_type c, Ring ring = Ring{}) {
    Poly r(nvars, ring);
    if (!r.ring_.is_zero(c)) r.terms_.push_back({Exponents(nvars, 0), std::move(c)});
    return r;
  }
  static Poly one(std::size_t nvars, Ring ring = Ring{}) {
    auto c = ring.one();
    return constant(nvars, std::move(c), std::move(ring));
  }
  static Poly variable(std::size_t nvars, std::size_t var, Ring ring = Ring{}) {
    if (var >= nvars) throw input_error("variable index out of range");
    Exponents e(nvars, 0);
    e[var] = 1;
    auto c = ring.one();
    return monomial(nvars, std::move(e), std::move(c), std::move(ring));
  }
  static Poly monomial(std::size_t nvars, Exponents e, coeff_type c, Ring ring = Ring{}) {
    if (e.size() != nvars) throw input_error("exponent vector length mismatch");
    Poly r(nvars, ring);
    if (!r.ring_.is_zero(c)) r.terms_.push_back({std::move(e), std::move(c)});
    return r;
  }
  /// Builds a polynomial from arbitrary (possibly repeated, unordered) terms.
  static Poly from_terms(std::size_t nvars, std::vector<Term> terms, Ring ring = Ring{}) {
    Poly r(nvars, ring);
    for (const auto& t : terms)
      if (t.exps.size() != nvars) throw input_error("exponent vector length mismatch");
    r.terms_ = std::move(terms);
    r.canonicalize();
    return r;
  }

  const Ring& ring() const { return ring_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && exponent_sum(terms_[0].exps) == 0); }
  coeff_type constant_value() const {
    if (terms_.empty()) return ring_.zero();
    const auto& t = terms_.back();
    return exponent_sum(t.exps) == 0 ? t.coeff : ring_.zero();
  }

  const Term& leading_term() const {
    if (terms_.empty()) throw input_error("leading term of zero polynomial");
    return terms_.front();
  }
  const coeff_type& leading_coeff() const { return leading_term().coeff; }

  std::int64_t degree() const {
    if (terms_.empty()) return kZeroDegree;
    return static_cast<std::int64_t>(exponent_sum(terms_.front().exps));
  }
  std::int64_t degree_in(std::size_t var) const {
    if (terms_.empty()) return kZeroDegree;
    std::uint32_t m = 0;
    for (const auto& t : terms_) m = std::max(m, t.exps[var]);
    return m;
  }
  bool uses_var(std::size_t var) const {
    for (const auto& t : terms_)
      if (t.exps[var] != 0) return true;
    return false;
  }
  /// Variables with a positive exponent somewhere.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < nvars_; ++v)
      if (uses_var(v)) out.push_back(v);
    return out;
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const auto d = exponent_sum(terms_.front().exps);
    for (const auto& t : terms_)
      if (exponent_sum(t.exps) != d) return false;
    return true;
  }

  /// Coefficient of an exact monomial.
  coeff_type coeff_of(const Exponents& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponents& x) { return grlex_cmp(t.exps, x) > 0; });
    if (it != terms_.end() && grlex_cmp(it->exps, e) == 0) return it->coeff;
    return ring_.zero();
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].exps != b.terms_[i].exps) return false;
      if (!a.ring_.equal(a.terms_[i].coeff, b.terms_[i].coeff)) return false;
    }
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = ring_.neg(t.coeff);
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.nvars_, a.ring_);
    if (a.terms_.size() == 1 && exponent_sum(a.terms_[0].exps) == 0) return b.scaled(a.terms_[0].coeff);
    if (b.terms_.size() == 1 && exponent_sum(b.terms_[0].exps) == 0) return a.scaled(b.terms_[0].coeff);
    const Ring& R = a.ring_;
    std::unordered_map<Exponents, coeff_type, ExponentsHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size() / 2 + 1);
    Exponents e(a.nvars_, 0);
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ta.exps[i] + tb.exps[i];
        auto [it, inserted] = acc.try_emplace(e, R.zero());
        R.addmul(it->second, ta.coeff, tb.coeff);
      }
    }
    Poly r(a.nvars_, a.ring_);
    r.terms_.reserve(acc.size());
    for (auto& [k, v] : acc)
      if (!R.is_zero(v)) r.terms_.push_back({k, std::move(v)});
    r.sort_terms();
    return r;
  }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  Poly scaled(const coeff_type& c) const {
    Poly r(nvars_, ring_);
    if (ring_.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      auto v = ring_.mul(t.coeff, c);
      if (!ring_.is_zero(v)) r.terms_.push_back({t.exps, std::move(v)});
    }
    return r;
  }
  /// Exact division of every coefficient by c.
  Poly divided_by_scalar(const coeff_type& c) const {
    Poly r(nvars_, ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.exps, ring_.divexact(t.coeff, c)});
    return r;
  }
  /// Multiplication by a monomial x^e.
  Poly shifted(const Exponents& e) const {
    Poly r = *this;
    for (auto& t : r.terms_)
      for (std::size_t i = 0; i < nvars_; ++i) t.exps[i] += e[i];
    return r;
  }

  Poly pow(unsigned long k) const {
    Poly result = one(nvars_, ring_);
    Poly base = *this;
    while (k) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return result;
  }

  Poly derivative(std::size_t var) const {
    Poly r(nvars_, ring_);
    for (const auto& t : terms_) {
      if (t.exps[var] == 0) continue;
      auto c = ring_.mul(t.coeff, ring_.from_int(static_cast<long>(t.exps[var])));
      if (ring_.is_zero(c)) continue;
      Exponents e = t.exps;
      --e[var];
      r.terms_.push_back({std::move(e), std::move(c)});
    }
    r.sort_terms();
    return r;
  }

  /// Substitutes var := value, keeping the variable count.
  Poly evaluate(std::size_t var, const coeff_type& value) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    std::vector<coeff_type> powers{ring_.one()};
    for (const auto& t : terms_) {
      while (powers.size() <= t.exps[var]) powers.push_back(ring_.mul(powers.back(), value));
      auto c = ring_.mul(t.coeff, powers[t.exps[var]]);
      if (ring_.is_zero(c)) continue;
      Exponents e = t.exps;
      e[var] = 0;
      out.push_back({std::move(e), std::move(c)});
    }
    return from_terms(nvars_, std::move(out), ring_);
  }

  /// Full evaluation at a point.
  coeff_type eval(std::span<const coeff_type> point) const {
    if (point.size() != nvars_) throw input_error("evaluation point has wrong dimension");
    std::vector<std::vector<coeff_type>> powers(nvars_, std::vector<coeff_type>{ring_.one()});
    coeff_type acc = ring_.zero();
    for (const auto& t : terms_) {
      coeff_type v = t.coeff;
      for (std::size_t i = 0; i < nvars_; ++i) {
        auto& pw = powers[i];
        while (pw.size() <= t.exps[i]) pw.push_back(ring_.mul(pw.back(), point[i]));
        if (t.exps[i]) v = ring_.mul(v, pw[t.exps[i]]);
      }
      ring_.add_to(acc, v);
    }
    return acc;
  }

  /// Coefficients with respect to `var`: result[k] multiplies var^k.
  std::vector<Poly> to_univariate(std::size_t var) const {
    std::vector<Poly> out;
    if (terms_.empty()) return out;
    out.assign(static_cast<std::size_t>(degree_in(var)) + 1, Poly(nvars_, ring_));
    for (const auto& t : terms_) {
      Exponents e = t.exps;
      const auto k = e[var];
      e[var] = 0;
      out[k].terms_.push_back({std::move(e), t.coeff});
    }
    for (auto& c : out) c.sort_terms();
    return out;
  }
  static Poly from_univariate(const std::vector<Poly>& coeffs, std::size_t var, std::size_t nvars,
                              const Ring& ring) {
    std::vector<Term> out;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      for (const auto& t : coeffs[k].terms_) {
        Exponents e = t.exps;
        e[var] += static_cast<std::uint32_t>(k);
        out.push_back({std::move(e), t.coeff});
      }
    return from_terms(nvars, std::move(out), ring);
  }

  /// Re-embeds into `new_nvars` variables, old variable i becoming new variable map[i].
  Poly remap(std::size_t new_nvars, std::span<const std::size_t> map) const {
    if (map.size() != nvars_) throw input_error("variable map has wrong length");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Exponents e(new_nvars, 0);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (t.exps[i] == 0) continue;
        if (map[i] >= new_nvars) throw input_error("variable map target out of range");
        e[map[i]] += t.exps[i];
      }
      out.push_back({std::move(e), t.coeff});
    }
    return from_terms(new_nvars, std::move(out), ring_);
  }

  /// Applies f to every coefficient, producing a polynomial over another ring.
  template <class Ring2, class F>
  Poly<Ring2> map_coeffs(const Ring2& ring2, F&& f) const {
    std::vector<typename Poly<Ring2>::Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.exps, f(t.coeff)});
    return Poly<Ring2>::from_terms(nvars_, std::move(out), ring2);
  }

 private:
  template <class>
  friend class Poly;

  static void check_same(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_) throw input_error("variable-count mismatch");
  }

  void sort_terms() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return grlex_cmp(x.exps, y.exps) > 0; });
  }

  void canonicalize() {
    sort_terms();
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().exps == t.exps)
        ring_.add_to(merged.back().coeff, t.coeff);
      else
        merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [&](const Term& t) { return ring_.is_zero(t.coeff); }),
                 merged.end());
    terms_ = std::move(merged);
  }

  static Poly merge(const Poly& a, const Poly& b, bool subtract) {
    check_same(a, b);
    const Ring& R = a.ring_;
    Poly r(a.nvars_, a.ring_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size())
        c = -1;
      else if (j == b.terms_.size())
        c = 1;
      else
        c = grlex_cmp(a.terms_[i].exps, b.terms_[j].exps);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        const auto& t = b.terms_[j++];
        r.terms_.push_back({t.exps, subtract ? R.neg(t.coeff) : t.coeff});
      } else {
        auto v = subtract ? R.sub(a.terms_[i].coeff, b.terms_[j].coeff) : R.add(a.terms_[i].coeff, b.terms_[j].coeff);
        if (!R.is_zero(v)) r.terms_.push_back({a.terms_[i].exps, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  Ring ring_{};
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

using IntPoly = Poly<IntegerRing>;
using FpPoly = Poly<PrimeField>;

/// Convenience constructor for integer polynomials from (exponents, coefficient) pairs.
inline IntPoly int_poly(std::size_t nvars, std::initializer_list<std::pair<std::vector<std::uint32_t>, long>> terms) {
  std::vector<IntPoly::Term> out;
  for (const auto& [e, c] : terms) out.push_back({Exponents(e.begin(), e.end()), Integer(c)});
  return IntPoly::from_terms(nvars, std::move(out));
}

/// Coefficientwise reduction of an integer polynomial into F_p.
inline FpPoly reduce_mod_p(const IntPoly& f, std::uint64_t p) {
  PrimeField field{p};
  return f.map_coeffs(field, [&](const Integer& c) { return field.from_integer(c); });
}

}  // namespace modred
