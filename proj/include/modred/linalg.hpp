#pragma once

// Exact dense linear algebra: rational row reduction with a fixed pivot rule,
// fraction-free (Bareiss) determinants over Z and Z[U].

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "modred/polyalg.hpp"

namespace modred {

using RatMatrix = std::vector<std::vector<Rational>>;
using IntMatrix = std::vector<std::vector<Integer>>;
using PolyMatrix = std::vector<std::vector<IntPoly>>;

/// In-place reduced row echelon form. Columns are processed left to right;
/// in each column the pivot is the remaining row whose entry has the largest
/// absolute numerator, the first such row on ties. Returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      if (best == rows || mpz_cmpabs(a[i][c].get_num_mpz_t(), a[best][c].get_num_mpz_t()) > 0) best = i;
    }
    if (best == rows) continue;
    std::swap(a[r], a[best]);
    const Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j)
      if (sgn(a[r][j]) != 0) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(a[r][j]) != 0) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Basis of the right nullspace of an RREF matrix (one vector per free column,
/// with a 1 in that column).
inline RatMatrix nullspace_from_rref(const RatMatrix& a, const std::vector<std::size_t>& pivots, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  RatMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Determinant of a square integer matrix by Bareiss elimination.
inline Integer bareiss_det(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t i = k + 1;
      while (i < n && sgn(a[i][k]) == 0) ++i;
      if (i == n) return 0;
      std::swap(a[i], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : Integer(-a[n - 1][n - 1]);
}

/// Determinant of a square matrix over Z[U] by Bareiss elimination with
/// exact polynomial division.
inline IntPoly bareiss_det(PolyMatrix a, std::size_t nvars) {
  const std::size_t n = a.size();
  if (n == 0) return IntPoly::one(nvars);
  IntPoly prev = IntPoly::one(nvars);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      // Prefer the sparsest nonzero pivot candidate.
      std::size_t best = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (!a[i][k].is_zero() && (best == n || a[i][k].size() < a[best][k].size())) best = i;
      if (best == n) return IntPoly(nvars);
      std::swap(a[best], a[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        IntPoly t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = prev.is_constant() && prev.leading_coeff() == 1 ? std::move(t) : divide_exact(t, prev);
      }
      a[i][k] = IntPoly(nvars);
    }
    prev = a[k][k];
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

struct RankInfo {
  std::size_t rank;
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
};

/// Rank with a set of rows and columns carrying a nonsingular maximal minor.
inline RankInfo rank_info(const IntMatrix& a) {
  RankInfo info{0, {}, {}};
  if (a.empty()) return info;
  const std::size_t rows = a.size(), cols = a[0].size();
  RatMatrix m(rows, std::vector<Rational>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = a[i][j];
  std::vector<std::size_t> order(rows);
  for (std::size_t i = 0; i < rows; ++i) order[i] = i;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (sgn(m[i][c]) != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    std::swap(order[r], order[piv]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    info.pivot_cols.push_back(c);
    ++r;
  }
  info.rank = r;
  info.pivot_rows.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(r));
  std::sort(info.pivot_rows.begin(), info.pivot_rows.end());
  return info;
}

inline IntMatrix submatrix(const IntMatrix& a, const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols) {
  IntMatrix s(rows.size(), std::vector<Integer>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s[i][j] = a[rows[i]][cols[j]];
  return s;
}

}  // namespace modred
