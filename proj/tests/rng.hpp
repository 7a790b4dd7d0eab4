#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "modred/modred.hpp"

namespace modred::testing {

/// SplitMix64; every property test owns one with a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return next() & 1; }

 private:
  std::uint64_t state_;
};

inline Exponents random_exponents(Rng& rng, std::size_t m, long max_deg) {
  Exponents e(m, 0);
  long budget = rng.range(0, max_deg);
  for (std::size_t i = 0; i < m && budget > 0; ++i) {
    const long k = i + 1 == m ? budget : rng.range(0, budget);
    e[i] = static_cast<std::uint32_t>(k);
    budget -= k;
  }
  // shuffle the slots so no variable is favoured
  for (std::size_t i = m; i > 1; --i) std::swap(e[i - 1], e[rng.next() % i]);
  return e;
}

/// Random polynomial with up to `terms` terms of total degree <= max_deg and
/// coefficients in [-max_coeff, max_coeff].
inline IntPoly random_poly(Rng& rng, std::size_t m, long max_deg, long max_coeff, int terms = 6) {
  std::vector<IntPoly::Term> ts;
  const int n = static_cast<int>(rng.range(1, terms));
  for (int i = 0; i < n; ++i) ts.push_back({random_exponents(rng, m, max_deg), Integer(rng.range(-max_coeff, max_coeff))});
  return IntPoly::from_terms(m, std::move(ts));
}

inline IntPoly random_nonzero_poly(Rng& rng, std::size_t m, long max_deg, long max_coeff, int terms = 6) {
  for (;;) {
    auto f = random_poly(rng, m, max_deg, max_coeff, terms);
    if (!f.is_zero()) return f;
  }
}

}  // namespace modred::testing
