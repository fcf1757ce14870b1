#pragma once

// Candidate polynomials attached to a polytope by shape alone: the plain
// vertex sum, binomial edge coefficients, and facet Minkowski products.
// Also the toric quantum period, computed combinatorially from relations
// among the vertices or from an explicit weight matrix, so it can
// cross-check the Laurent period pipeline.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fanomut/mutation.hpp"
#include "fanomut/parse.hpp"

namespace fanomut {

// one row per relation, one column per toric divisor
using WeightMatrix = IntMat;

inline LaurentPolynomial vertex_ansatz(const LatticePolytope& p) {
  LaurentPolynomial f(p.ambient_dim());
  for (const IntVec& v : p.vertices()) f.set_coefficient(v, AffineForm(1));
  return f;
}

// vertices 1, points inside an edge binomial, everything else 0
inline LaurentPolynomial binomial_ansatz(const LatticePolytope& p) {
  if (!p.full_dim())
    throw domain_error("degenerate-input",
                       "binomial coefficients need a full-dimensional body");
  LaurentPolynomial f = vertex_ansatz(p);
  for (auto [i, j] : detail::vertex_pairs(p)) {
    IntVec delta = vec_sub(p.vertices()[j], p.vertices()[i]);
    Int len = content(delta);
    if (len == 1) continue;
    IntVec step = primitive(delta);
    IntVec at = p.vertices()[i];
    for (Int k = 1; k < len; ++k) {
      at = vec_add(at, step);
      f.set_coefficient(at, AffineForm(binomial(len, k)));
    }
  }
  return f;
}

// Degree-by-degree count of non-negative integer relations among the
// vertices, weighted by the multinomial coefficient. This equals the
// constant-term sequence of the vertex sum but is computed independently.
inline PeriodSequence quantum_period_toric(const LatticePolytope& p,
                                           unsigned order) {
  if (!p.is_fano())
    throw domain_error("not-fano",
                       "toric period needs a Fano polytope as its fan");
  const std::vector<IntVec>& b = p.vertices();
  size_t m = b.size(), dim = p.ambient_dim();
  // suffix coordinate ranges for pruning
  std::vector<IntVec> smin(m + 1, IntVec(dim, 0)), smax(m + 1, IntVec(dim, 0));
  for (size_t i = m; i-- > 0;) {
    for (size_t c = 0; c < dim; ++c) {
      smin[i][c] = std::min(smin[i + 1][c], b[i][c]);
      smax[i][c] = std::max(smax[i + 1][c], b[i][c]);
    }
  }

  PeriodSequence seq;
  seq.kind = PeriodKind::regularized;
  seq.coeffs.assign(order + 1, Rat(0));
  for (unsigned k = 0; k <= order; ++k) {
    Int total = 0;
    IntVec cur(dim, 0);
    auto feasible = [&](size_t i, const Int& rem) {
      for (size_t c = 0; c < dim; ++c) {
        if (-cur[c] < rem * smin[i][c]) return false;
        if (-cur[c] > rem * smax[i][c]) return false;
      }
      return true;
    };
    auto rec = [&](auto&& self, size_t i, Int rem, Int mult) -> void {
      if (i == m) {
        if (rem == 0 && is_zero(cur)) total += mult;
        return;
      }
      for (Int l = 0; l <= rem; ++l) {
        if (l > 0)
          for (size_t c = 0; c < dim; ++c) cur[c] += b[i][c];
        if (feasible(i + 1, rem - l))
          self(self, i + 1, rem - l, mult * binomial(rem, l));
      }
      for (Int l = 0; l < rem; ++l)
        for (size_t c = 0; c < dim; ++c) cur[c] -= b[i][c];
    };
    rec(rec, 0, Int(k), Int(1));
    seq.coeffs[k] = Rat(total);
  }
  return seq;
}

// Same series from a weight matrix: sum over integer combinations v of the
// rows whose pairing with every column is non-negative, each contributing
// the multinomial of its pairings at t^(pairing sum). The pairings at a set
// of independent columns determine v, so scanning those through 0..order
// visits every contributing v exactly once. Needs full row rank; otherwise
// a whole line of v share each degree and the coefficients diverge.
inline PeriodSequence quantum_period_toric(const WeightMatrix& w,
                                           unsigned order) {
  size_t k = w.size();
  if (k == 0) throw domain_error("empty-input", "weight matrix has no rows");
  size_t r = w[0].size();
  for (const IntVec& row : w)
    if (row.size() != r)
      throw domain_error("dimension-mismatch",
                         "weight matrix rows differ in length");
  if (r == 0) throw domain_error("empty-input", "weight matrix has no columns");

  // row echelon over the rationals to pick independent columns
  std::vector<std::vector<Rat>> ech(k, std::vector<Rat>(r));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < r; ++j) ech[i][j] = Rat(w[i][j]);
  std::vector<size_t> pivots;
  for (size_t col = 0; col < r && pivots.size() < k; ++col) {
    size_t row = pivots.size(), sel = row;
    while (sel < k && ech[sel][col] == 0) ++sel;
    if (sel == k) continue;
    std::swap(ech[sel], ech[row]);
    for (size_t i = row + 1; i < k; ++i) {
      if (ech[i][col] == 0) continue;
      Rat f = Rat(ech[i][col] / ech[row][col]);
      for (size_t j = col; j < r; ++j) ech[i][j] -= f * ech[row][j];
    }
    pivots.push_back(col);
  }
  if (pivots.size() < k)
    throw domain_error("non-pointed-cone",
                       "weight matrix rows are linearly dependent");

  // invert the square matrix of pivot pairings, row j = pivot column j
  std::vector<std::vector<Rat>> aug(k, std::vector<Rat>(2 * k, Rat(0)));
  for (size_t j = 0; j < k; ++j) {
    for (size_t m = 0; m < k; ++m) aug[j][m] = Rat(w[m][pivots[j]]);
    aug[j][k + j] = Rat(1);
  }
  for (size_t col = 0; col < k; ++col) {
    size_t sel = col;
    while (sel < k && aug[sel][col] == 0) ++sel;
    if (sel == k)
      throw domain_error("internal-error", "pivot block lost its rank");
    std::swap(aug[sel], aug[col]);
    Rat lead = aug[col][col];
    for (size_t j = 0; j < 2 * k; ++j) aug[col][j] /= lead;
    for (size_t i = 0; i < k; ++i) {
      if (i == col || aug[i][col] == 0) continue;
      Rat f = aug[i][col];
      for (size_t j = 0; j < 2 * k; ++j) aug[i][j] -= f * aug[col][j];
    }
  }

  PeriodSequence seq;
  seq.kind = PeriodKind::regularized;
  seq.coeffs.assign(order + 1, Rat(0));
  std::vector<unsigned> q(k, 0);
  std::vector<Int> v(k), d(r);
  for (;;) {
    unsigned qsum = 0;
    for (unsigned qi : q) qsum += qi;
    bool usable = qsum <= order;
    for (size_t m = 0; m < k && usable; ++m) {
      Rat acc(0);
      for (size_t j = 0; j < k; ++j) acc += aug[m][k + j] * Rat(q[j]);
      if (denominator(acc) != 1)
        usable = false;
      else
        v[m] = numerator(acc);
    }
    if (usable) {
      Int total = 0;
      for (size_t i = 0; i < r && usable; ++i) {
        Int s = 0;
        for (size_t m = 0; m < k; ++m) s += v[m] * w[m][i];
        if (s < 0 || (total += s) > order) usable = false;
        d[i] = s;
      }
      if (usable) {
        Int mult = 1, run = 0;
        for (size_t i = 0; i < r; ++i) {
          run += d[i];
          mult *= binomial(run, d[i]);
        }
        seq.coeffs[detail::to_power(total)] += Rat(mult);
      }
    }
    size_t pos = 0;
    while (pos < k && ++q[pos] > order) q[pos++] = 0;
    if (pos == k) break;
  }
  return seq;
}

struct MinkowskiPiece {
  LatticePolytope shape;
  LaurentPolynomial poly;
};

using MinkowskiDecomposition = std::vector<MinkowskiPiece>;

namespace detail {

inline Int cross2(const IntVec& a, const IntVec& b) {
  return a[0] * b[1] - a[1] * b[0];
}

inline MinkowskiPiece make_segment_piece(IntVec d) {
  if (vec_neg(d) > d) d = vec_neg(d);
  MinkowskiPiece piece;
  piece.shape = LatticePolytope::hull({IntVec{0, 0}, d}, 2, false);
  piece.poly = LaurentPolynomial::monomial(IntVec{0, 0}, AffineForm(1)) +
               LaurentPolynomial::monomial(d, AffineForm(1));
  return piece;
}

// triangle with unit edges p, q and a base of n steps r; p + q + n r = 0
inline MinkowskiPiece make_triangle_piece(IntVec p, IntVec q, const IntVec& r,
                                          const Int& n) {
  if (cross2(r, p) < 0) std::swap(p, q);
  IntVec base0{0, 0};
  IntVec base1 = vec_scale(n, r);
  IntVec apex = vec_add(base1, p);
  IntVec shift = std::min(std::min(base0, base1), apex);
  base0 = vec_sub(base0, shift);
  base1 = vec_sub(base1, shift);
  apex = vec_sub(apex, shift);
  MinkowskiPiece piece;
  piece.shape = LatticePolytope::hull({base0, base1, apex}, 2);
  piece.poly = LaurentPolynomial(2);
  IntVec at = base0;
  for (Int j = 0; j <= n; ++j) {
    piece.poly.set_coefficient(at, AffineForm(binomial(n, j)));
    at = vec_add(at, r);
  }
  piece.poly.set_coefficient(apex, AffineForm(1));
  return piece;
}

inline std::string decomposition_key(const MinkowskiDecomposition& d) {
  std::string key;
  for (const MinkowskiPiece& piece : d) key += to_string(piece.poly) + ";";
  return key;
}

inline void sort_decomposition(MinkowskiDecomposition& d) {
  std::sort(d.begin(), d.end(),
            [](const MinkowskiPiece& a, const MinkowskiPiece& b) {
              return to_string(a.poly) < to_string(b.poly);
            });
}

inline void enumerate_decompositions(
    std::map<IntVec, Int>& remaining, MinkowskiDecomposition& acc,
    std::map<std::string, MinkowskiDecomposition>& out) {
  const IntVec* pivot = nullptr;
  for (const auto& [dir, count] : remaining)
    if (count > 0) {
      pivot = &dir;
      break;
    }
  if (!pivot) {
    MinkowskiDecomposition d = acc;
    sort_decomposition(d);
    out.emplace(decomposition_key(d), std::move(d));
    return;
  }
  IntVec d = *pivot;
  std::vector<IntVec> dirs;
  for (const auto& [dir, count] : remaining)
    if (count > 0) dirs.push_back(dir);

  auto consume = [&](const IntVec& dir, const Int& k) { remaining[dir] -= k; };
  auto restore = [&](const IntVec& dir, const Int& k) { remaining[dir] += k; };

  // pair off with the opposite direction as a unit segment
  IntVec nd = vec_neg(d);
  auto ndit = remaining.find(nd);
  if (ndit != remaining.end() && ndit->second > 0) {
    consume(d, 1);
    consume(nd, 1);
    acc.push_back(make_segment_piece(d));
    enumerate_decompositions(remaining, acc, out);
    acc.pop_back();
    restore(d, 1);
    restore(nd, 1);
  }

  // d as one of the two unit edges of a triangle
  for (const IntVec& q : dirs) {
    if (q == d || q == nd) continue;
    IntVec rsum = vec_neg(vec_add(d, q));
    IntVec r = primitive(rsum);
    Int n = content(rsum);
    auto rit = remaining.find(r);
    if (rit == remaining.end()) continue;
    Int dets = cross2(r, d);
    if (dets != 1 && dets != -1) continue;
    consume(d, 1);
    consume(q, 1);
    if (rit->second >= n && remaining[d] >= 0 && remaining[q] >= 0) {
      consume(r, n);
      if (remaining[r] >= 0) {
        acc.push_back(make_triangle_piece(d, q, r, n));
        enumerate_decompositions(remaining, acc, out);
        acc.pop_back();
      }
      restore(r, n);
    }
    restore(d, 1);
    restore(q, 1);
  }

  // d as the base direction of a triangle
  for (Int n = 1; n <= remaining[d]; ++n) {
    for (const IntVec& p : dirs) {
      if (p == d || p == nd) continue;
      Int dets = cross2(d, p);
      if (dets != 1 && dets != -1) continue;
      IntVec q = vec_neg(vec_add(vec_scale(n, d), p));
      if (content(q) != 1) continue;
      if (q < p) continue;  // the partner loop will see the mirror case
      auto qit = remaining.find(q);
      if (qit == remaining.end() || qit->second <= 0) continue;
      consume(d, n);
      consume(p, 1);
      consume(q, 1);
      if (remaining[d] >= 0 && remaining[p] >= 0 && remaining[q] >= 0) {
        acc.push_back(make_triangle_piece(p, q, d, n));
        enumerate_decompositions(remaining, acc, out);
        acc.pop_back();
      }
      restore(d, n);
      restore(p, 1);
      restore(q, 1);
    }
  }
}

}  // namespace detail

// all ways to write a polygon as a sum of unit segments and triangles with
// edge lengths (1, 1, n) and area n
inline std::vector<MinkowskiDecomposition> admissible_decompositions(
    const LatticePolytope& q) {
  if (q.ambient_dim() != 2)
    throw domain_error("unsupported-dimension",
                       "decompositions are for plane polygons");
  if (q.dim() == 0) return {MinkowskiDecomposition{}};
  if (q.dim() == 1) {
    IntVec delta = vec_sub(q.vertices()[1], q.vertices()[0]);
    Int len = content(delta);
    MinkowskiDecomposition d;
    for (Int i = 0; i < len; ++i)
      d.push_back(detail::make_segment_piece(primitive(delta)));
    return {std::move(d)};
  }
  std::map<IntVec, Int> steps;
  for (const Facet& f : q.facets()) {
    IntVec delta =
        vec_sub(q.vertices()[f.vertices[1]], q.vertices()[f.vertices[0]]);
    steps[primitive(delta)] += content(delta);
  }
  std::map<std::string, MinkowskiDecomposition> found;
  MinkowskiDecomposition acc;
  detail::enumerate_decompositions(steps, acc, found);
  std::vector<MinkowskiDecomposition> out;
  for (auto& [key, d] : found) out.push_back(std::move(d));
  return out;
}

// Minkowski products facet by facet. Each facet of a reflexive body is
// flattened to the plane, every admissible decomposition contributes the
// product of its piece polynomials, and choices multiply across facets.
// Shared edges always agree because edge factors multiply to a binomial.
inline std::vector<LaurentPolynomial> minkowski_ansatz(
    const LatticePolytope& p) {
  if (p.ambient_dim() != 3)
    throw domain_error("unsupported-dimension",
                       "facet products are defined for 3D bodies");
  if (!p.full_dim() || !p.is_reflexive())
    throw domain_error("not-reflexive",
                       "facet products need all facets at height one");

  struct FacetChoice {
    IntMat back;                                // local (-1, a, b) -> ambient
    std::vector<LaurentPolynomial> products;    // one per decomposition
  };
  std::vector<FacetChoice> choices;
  size_t combos = 1;
  for (const Facet& facet : p.facets()) {
    IntMat w = mat_transpose(inverse_unimodular(complete_to_basis(facet.normal)));
    FacetChoice fc;
    fc.back = inverse_unimodular(w);
    std::vector<IntVec> chart;
    for (size_t vi : facet.vertices) {
      IntVec img = mat_apply(w, p.vertices()[vi]);
      if (img[0] != -1)
        throw domain_error("internal-error", "facet chart height is off");
      chart.push_back({img[1], img[2]});
    }
    LatticePolytope q = LatticePolytope::hull(chart, 2);
    auto decomps = admissible_decompositions(q);
    if (decomps.empty()) return {};
    for (const MinkowskiDecomposition& d : decomps) {
      LaurentPolynomial prod = LaurentPolynomial::constant(2, AffineForm(1));
      for (const MinkowskiPiece& piece : d) prod = prod * piece.poly;
      // pieces are normalised translates; slide the product back onto q
      LatticePolytope support = prod.newton_polytope();
      IntVec shift = vec_sub(*std::min_element(q.vertices().begin(),
                                               q.vertices().end()),
                             *std::min_element(support.vertices().begin(),
                                               support.vertices().end()));
      prod = prod.mul_monomial(shift);
      if (!(prod.newton_polytope() == q))
        throw domain_error("internal-error",
                           "decomposition does not rebuild its facet");
      fc.products.push_back(std::move(prod));
    }
    combos *= fc.products.size();
    if (combos > 100000)
      throw domain_error("too-many-decompositions",
                         "facet decomposition choices exceed 100000");
    choices.push_back(std::move(fc));
  }

  std::map<std::string, LaurentPolynomial> results;
  std::vector<size_t> pick(choices.size(), 0);
  for (;;) {
    std::map<IntVec, AffineForm> coeff;
    for (size_t fi = 0; fi < choices.size(); ++fi) {
      const FacetChoice& fc = choices[fi];
      for (const auto& [e, c] : fc.products[pick[fi]].terms()) {
        IntVec z = mat_apply(fc.back, IntVec{-1, e[0], e[1]});
        auto it = coeff.find(z);
        if (it == coeff.end())
          coeff.emplace(std::move(z), c);
        else if (!(it->second == c))
          throw domain_error("internal-error",
                             "facet products disagree on a shared face");
      }
    }
    LaurentPolynomial f(3);
    for (const auto& [e, c] : coeff) f.set_coefficient(e, c);
    results.emplace(to_string(f), std::move(f));

    size_t fi = 0;
    while (fi < choices.size() && ++pick[fi] == choices[fi].products.size()) {
      pick[fi] = 0;
      ++fi;
    }
    if (fi == choices.size()) break;
  }
  std::vector<LaurentPolynomial> out;
  for (auto& [key, f] : results) out.push_back(std::move(f));
  return out;
}

}  // namespace fanomut
