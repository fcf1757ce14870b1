#pragma once

// Integer lattice plumbing: vectors, matrices, Hermite normal form,
// primitivity, sublattices. Vectors are column vectors under matrix action
// (apply(M, v) = M*v); generating sets are stacked as matrix rows.

#include <optional>
#include <vector>

#include "fanomut/numbers.hpp"

namespace fanomut {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row major

inline IntVec vec_add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec vec_sub(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVec vec_scale(const Int& c, const IntVec& a) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline IntVec vec_neg(const IntVec& a) { return vec_scale(-1, a); }

inline Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const IntVec& a) {
  for (const Int& x : a) {
    if (x != 0) return false;
  }
  return true;
}

inline Int content(const IntVec& a) {
  Int g = 0;
  for (const Int& x : a) g = gcd(g, x);
  return g;
}

// v / gcd(v). The zero vector has no primitive direction.
inline IntVec primitive(const IntVec& v) {
  Int g = content(v);
  if (g == 0) throw domain_error("zero-vector", "primitive() of the zero vector");
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

inline IntMat identity_matrix(size_t n) {
  IntMat m(n, IntVec(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntVec mat_apply(const IntMat& m, const IntVec& v) {
  IntVec r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  return r;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMat r(n, IntVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (size_t l = 0; l < m; ++l) r[i][l] += a[i][j] * b[j][l];
    }
  return r;
}

inline IntMat mat_transpose(const IntMat& a) {
  size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
  IntMat r(m, IntVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
  return r;
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(IntMat m) {
  size_t n = m.size();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline bool is_unimodular(const IntMat& m) {
  if (m.empty() || m.size() != m[0].size()) return false;
  Int d = det(m);
  return d == 1 || d == -1;
}

struct HnfResult {
  IntMat h;  // row-style Hermite normal form
  IntMat u;  // unimodular, h = u * input
};

// Row-style HNF: pivot columns strictly increase, pivots positive, entries
// above a pivot reduced into [0, pivot), zero rows at the bottom.
inline HnfResult hermite_normal_form(const IntMat& input) {
  size_t rows = input.size();
  size_t cols = rows == 0 ? 0 : input[0].size();
  IntMat h = input;
  IntMat u = identity_matrix(rows);
  size_t pivot_row = 0;
  for (size_t col = 0; col < cols && pivot_row < rows; ++col) {
    // Clear the column below pivot_row with gcd row combinations.
    for (size_t i = pivot_row + 1; i < rows; ++i) {
      if (h[i][col] == 0) continue;
      if (h[pivot_row][col] == 0) {
        std::swap(h[pivot_row], h[i]);
        std::swap(u[pivot_row], u[i]);
        continue;
      }
      Int x, y;
      Int g = ext_gcd(h[pivot_row][col], h[i][col], x, y);
      Int p = h[pivot_row][col] / g, q = h[i][col] / g;
      // (pivot_row, i) <- (x*pivot_row + y*i, -q*pivot_row + p*i); det = 1.
      for (size_t j = 0; j < cols; ++j) {
        Int a = h[pivot_row][j], b = h[i][j];
        h[pivot_row][j] = x * a + y * b;
        h[i][j] = p * b - q * a;
      }
      for (size_t j = 0; j < rows; ++j) {
        Int a = u[pivot_row][j], b = u[i][j];
        u[pivot_row][j] = x * a + y * b;
        u[i][j] = p * b - q * a;
      }
    }
    if (h[pivot_row][col] == 0) continue;
    if (h[pivot_row][col] < 0) {
      for (size_t j = 0; j < cols; ++j) h[pivot_row][j] = -h[pivot_row][j];
      for (size_t j = 0; j < rows; ++j) u[pivot_row][j] = -u[pivot_row][j];
    }
    for (size_t i = 0; i < pivot_row; ++i) {
      // floor division so the reduced entry lands in [0, pivot)
      Int q = h[i][col] / h[pivot_row][col];
      if (q * h[pivot_row][col] > h[i][col]) q -= 1;
      if (q == 0) continue;
      for (size_t j = 0; j < cols; ++j) h[i][j] -= q * h[pivot_row][j];
      for (size_t j = 0; j < rows; ++j) u[i][j] -= q * u[pivot_row][j];
    }
    ++pivot_row;
  }
  return {h, u};
}

struct SublatticeReport {
  size_t ambient_dim = 0;
  size_t rank = 0;
  IntMat basis;               // rank x ambient_dim, HNF rows
  std::optional<Int> index;   // [Z^n : L], finite iff rank == ambient_dim
};

inline SublatticeReport sublattice_generated(const IntMat& generators,
                                             size_t ambient_dim) {
  SublatticeReport rep;
  rep.ambient_dim = ambient_dim;
  if (generators.empty()) return rep;
  HnfResult hr = hermite_normal_form(generators);
  for (const IntVec& row : hr.h) {
    if (!is_zero(row)) rep.basis.push_back(row);
  }
  rep.rank = rep.basis.size();
  if (rep.rank == ambient_dim) {
    Int idx = 1;
    for (size_t i = 0; i < ambient_dim; ++i) idx *= rep.basis[i][i];
    rep.index = idx;
  }
  return rep;
}

// Solve A x = b exactly over Q. Requires a unique solution; returns nullopt
// when inconsistent, throws when underdetermined (not used on such systems).
inline std::optional<std::vector<Rat>> solve_unique(
    const std::vector<std::vector<Rat>>& a_in, const std::vector<Rat>& b_in) {
  std::vector<std::vector<Rat>> a = a_in;
  std::vector<Rat> b = b_in;
  size_t rows = a.size(), cols = rows == 0 ? 0 : a[0].size();
  std::vector<size_t> pivot_of_col(cols, size_t(-1));
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t p = rank;
    while (p < rows && a[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[rank], a[p]);
    std::swap(b[rank], b[p]);
    Rat inv = a[rank][col];
    for (size_t j = col; j < cols; ++j) a[rank][j] /= inv;
    b[rank] /= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
      b[i] -= f * b[rank];
    }
    pivot_of_col[col] = rank;
    ++rank;
  }
  for (size_t i = rank; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;
  }
  if (rank < cols)
    throw domain_error("underdetermined", "solve_unique needs full column rank");
  std::vector<Rat> x(cols);
  for (size_t col = 0; col < cols; ++col) x[col] = b[pivot_of_col[col]];
  return x;
}

// Coordinates of each point in the report's basis. Points must lie in the
// sublattice; otherwise "not-in-sublattice".
inline std::vector<IntVec> restrict_to_sublattice(
    const std::vector<IntVec>& points, const SublatticeReport& rep) {
  std::vector<IntVec> out;
  out.reserve(points.size());
  // x * basis = p, i.e. basis^T x = p^T
  std::vector<std::vector<Rat>> at(rep.ambient_dim,
                                   std::vector<Rat>(rep.rank));
  for (size_t i = 0; i < rep.rank; ++i)
    for (size_t j = 0; j < rep.ambient_dim; ++j) at[j][i] = Rat(rep.basis[i][j]);
  for (const IntVec& p : points) {
    std::vector<Rat> rhs(rep.ambient_dim);
    for (size_t j = 0; j < rep.ambient_dim; ++j) rhs[j] = Rat(p[j]);
    auto sol = solve_unique(at, rhs);
    if (!sol)
      throw domain_error("not-in-sublattice", "point outside the sublattice");
    IntVec coords(rep.rank);
    for (size_t i = 0; i < rep.rank; ++i) {
      if (denominator((*sol)[i]) != 1)
        throw domain_error("not-in-sublattice", "point outside the sublattice");
      coords[i] = numerator((*sol)[i]);
    }
    out.push_back(coords);
  }
  return out;
}

// U in GL(n,Z) with U*v = e1, for primitive v.
inline IntMat complete_to_basis(const IntVec& v) {
  IntMat column(v.size(), IntVec(1));
  for (size_t i = 0; i < v.size(); ++i) column[i][0] = v[i];
  HnfResult hr = hermite_normal_form(column);
  if (hr.h[0][0] != 1)
    throw domain_error("not-primitive", "complete_to_basis needs a primitive vector");
  return hr.u;
}

// Integer inverse of a unimodular matrix.
inline IntMat inverse_unimodular(const IntMat& m) {
  size_t n = m.size();
  Int d = det(m);
  if (d != 1 && d != -1)
    throw domain_error("not-unimodular", "matrix determinant is not +-1");
  // adjugate / det, computed by cofactors (n <= 4 in practice)
  IntMat inv(n, IntVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      IntMat minor;
      minor.reserve(n - 1);
      for (size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        IntVec row;
        row.reserve(n - 1);
        for (size_t c = 0; c < n; ++c) {
          if (c == j) continue;
          row.push_back(m[r][c]);
        }
        minor.push_back(row);
      }
      Int cof = det(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      inv[j][i] = cof / d;
    }
  return inv;
}

}  // namespace fanomut
