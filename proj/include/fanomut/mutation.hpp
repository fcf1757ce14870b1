#pragma once

// Mutations of Laurent polynomials and of their Newton polytopes. A mutation
// is specified by a primitive weight w (a linear functional on exponents) and
// a factor supported on the wall w = 0. Terms at w-height h pick up the h-th
// power of the factor; negative heights divide, so the slice there must be
// exactly divisible.

#include <map>
#include <optional>

#include "fanomut/laurent.hpp"

namespace fanomut {

// f split by w-height; each piece keeps the original exponents
inline std::map<Int, LaurentPolynomial> weight_slices(
    const LaurentPolynomial& f, const IntVec& w) {
  if (w.size() != f.dim())
    throw domain_error("dimension-mismatch", "weight length != dimension");
  std::map<Int, LaurentPolynomial> out;
  for (const auto& [e, c] : f.terms()) {
    Int h = dot(w, e);
    auto it = out.find(h);
    if (it == out.end())
      it = out.emplace(h, LaurentPolynomial(f.dim())).first;
    it->second.set_coefficient(e, c);
  }
  return out;
}

// exact division in the Laurent ring; nullopt when d does not divide p.
// The divisor must have constant coefficients; p may carry parameters.
// Quotient terms can only sit where a translate of Newt(d) fits inside
// Newt(p), which bounds the loop.
inline std::optional<LaurentPolynomial> try_divide(const LaurentPolynomial& p,
                                                   const LaurentPolynomial& d) {
  if (p.dim() != d.dim())
    throw domain_error("dimension-mismatch", "division across dimensions");
  if (d.term_count() == 0)
    throw domain_error("division-by-zero", "zero divisor");
  for (const auto& [e, c] : d.terms())
    if (!c.is_constant())
      throw domain_error("parametric-divisor",
                         "divisor coefficients must be constants");
  if (p.term_count() == 0) return LaurentPolynomial(p.dim());

  LatticePolytope np = p.newton_polytope();
  LatticePolytope nd = d.newton_polytope();
  const IntVec& d_lead = d.terms().rbegin()->first;  // lex-max exponent
  Rat d_lc = d.terms().rbegin()->second.constant();

  std::set<IntVec> allowed;
  for (const IntVec& z : np.lattice_points()) {
    IntVec v = vec_sub(z, d_lead);
    bool fits = true;
    for (const IntVec& u : nd.vertices())
      if (!np.contains(vec_add(v, u))) {
        fits = false;
        break;
      }
    if (fits) allowed.insert(v);
  }

  LaurentPolynomial q(p.dim());
  LaurentPolynomial r = p;
  size_t guard = allowed.size() + 1;
  while (r.term_count() != 0) {
    if (guard-- == 0) return std::nullopt;
    auto lead = r.terms().rbegin();
    IntVec t_exp = vec_sub(lead->first, d_lead);
    if (!allowed.count(t_exp)) return std::nullopt;
    AffineForm t_c = lead->second / d_lc;
    q.set_coefficient(t_exp, t_c);
    r = r - d.mul_monomial(t_exp).scale(t_c);
  }
  return q;
}

namespace detail {

inline void check_weight(const IntVec& w, size_t dim) {
  if (w.size() != dim)
    throw domain_error("dimension-mismatch", "weight length != dimension");
  if (is_zero(w))
    throw domain_error("invalid-weight", "weight must be nonzero");
  if (content(w) != 1)
    throw domain_error("invalid-weight", "weight must be primitive");
}

inline void check_factor(const LaurentPolynomial& a, const IntVec& w) {
  if (a.dim() != w.size())
    throw domain_error("dimension-mismatch", "factor dimension != weight");
  if (a.term_count() == 0)
    throw domain_error("invalid-factor", "factor must be nonzero");
  for (const auto& [e, c] : a.terms()) {
    if (dot(w, e) != 0)
      throw domain_error("factor-not-level",
                         "factor support must lie on the w = 0 wall");
    if (!c.is_constant())
      throw domain_error("parametric-factor",
                         "factor coefficients must be constants");
  }
}

inline unsigned to_power(const Int& h) {
  return static_cast<unsigned>(h.convert_to<unsigned long>());
}

}  // namespace detail

inline bool is_mutable(const LaurentPolynomial& f, const IntVec& w,
                       const LaurentPolynomial& a) {
  detail::check_weight(w, f.dim());
  detail::check_factor(a, w);
  for (const auto& [h, slice] : weight_slices(f, w)) {
    if (h >= 0) continue;
    if (!try_divide(slice, a.power(detail::to_power(-h)))) return false;
  }
  return true;
}

inline LaurentPolynomial mutate(const LaurentPolynomial& f, const IntVec& w,
                                const LaurentPolynomial& a) {
  detail::check_weight(w, f.dim());
  detail::check_factor(a, w);
  LaurentPolynomial g(f.dim());
  for (const auto& [h, slice] : weight_slices(f, w)) {
    if (h < 0) {
      auto q = try_divide(slice, a.power(detail::to_power(-h)));
      if (!q)
        throw domain_error("not-mutable",
                           "slice at height " + to_string(h) +
                               " is not divisible by the factor power");
      g = g + *q;
    } else if (h == 0) {
      g = g + slice;
    } else {
      g = g + slice * a.power(detail::to_power(h));
    }
  }
  return g;
}

namespace detail {

// all edges of P as vertex index pairs
inline std::vector<std::pair<size_t, size_t>> vertex_pairs(
    const LatticePolytope& p) {
  std::vector<std::pair<size_t, size_t>> out;
  if (p.ambient_dim() == 1) {
    out.push_back({0, 1});
  } else if (p.ambient_dim() == 2) {
    for (const Facet& f : p.facets())
      out.push_back({f.vertices[0], f.vertices[1]});
  } else {
    for (const EdgeFace& e : p.edges()) out.push_back({e.a, e.b});
  }
  return out;
}

struct PolytopeMutation {
  bool ok = false;
  std::string why;
  std::vector<IntVec> lower;               // kept lattice points, heights < 0
  std::vector<std::vector<Rat>> upper;     // inflated part, heights >= 0
};

// admissibility check and raw point collection. The slice at height h < 0
// keeps exactly the lattice points u with u + |h|*A inside P; every vertex
// of P at that height must be recoverable from a kept point plus |h|*A.
inline PolytopeMutation polytope_mutation_data(const LatticePolytope& p,
                                               const IntVec& w,
                                               const LatticePolytope& a,
                                               bool need_points) {
  if (!p.full_dim())
    throw domain_error("degenerate-input",
                       "mutation needs a full-dimensional polytope");
  check_weight(w, p.ambient_dim());
  if (a.ambient_dim() != p.ambient_dim())
    throw domain_error("dimension-mismatch", "factor ambient dimension");
  for (const IntVec& u : a.vertices())
    if (dot(w, u) != 0)
      throw domain_error("factor-not-level",
                         "factor polytope must lie on the w = 0 wall");

  PolytopeMutation out;
  Int h_min = 0;
  std::vector<Int> vheights;
  for (const IntVec& v : p.vertices()) {
    vheights.push_back(dot(w, v));
    h_min = std::min(h_min, vheights.back());
  }

  std::map<Int, std::vector<IntVec>> kept;  // height -> R points
  if (h_min < 0) {
    // a kept point u need not lie in P itself, only u + |h|*A must; every
    // such u is a lattice point of P at height h shifted by -|h|*base
    const IntVec& base = a.vertices().front();
    for (const IntVec& z : p.lattice_points()) {
      Int h = dot(w, z);
      if (h >= 0) continue;
      IntVec u = vec_add(z, vec_scale(h, base));
      bool fits = true;
      for (const IntVec& av : a.vertices())
        if (!p.contains(vec_add(u, vec_scale(-h, av)))) {
          fits = false;
          break;
        }
      if (fits) kept[h].push_back(u);
    }
    for (Int h = h_min; h < 0; ++h) {
      auto it = kept.find(h);
      LatticePolytope blown = a.dilate(-h);
      for (size_t vi = 0; vi < vheights.size(); ++vi) {
        if (vheights[vi] != h) continue;
        bool covered = false;
        if (it != kept.end())
          for (const IntVec& u : it->second)
            if (blown.contains(vec_sub(p.vertices()[vi], u))) {
              covered = true;
              break;
            }
        if (!covered) {
          std::ostringstream os;
          os << "vertex";
          for (const Int& c : p.vertices()[vi]) os << ' ' << c;
          os << " at height " << h << " is not covered";
          out.why = os.str();
          return out;
        }
      }
    }
  }
  out.ok = true;
  if (!need_points) return out;

  for (auto& [h, pts] : kept)
    for (IntVec& z : pts) out.lower.push_back(std::move(z));
  // heights >= 0 inflate linearly, so vertices of the w >= 0 part suffice:
  // the polytope vertices on that side plus the edge crossings of the wall
  for (size_t vi = 0; vi < vheights.size(); ++vi) {
    if (vheights[vi] < 0) continue;
    for (const IntVec& u : a.vertices()) {
      IntVec pt = vec_add(p.vertices()[vi], vec_scale(vheights[vi], u));
      std::vector<Rat> q(pt.size());
      for (size_t i = 0; i < pt.size(); ++i) q[i] = Rat(pt[i]);
      out.upper.push_back(std::move(q));
    }
  }
  for (auto [i, j] : vertex_pairs(p)) {
    const Int &hi = vheights[i], &hj = vheights[j];
    if (hi == 0 || hj == 0) continue;  // endpoint already collected
    if ((hi < 0) == (hj < 0)) continue;
    Rat t = Rat(hi) / Rat(hi - hj);  // crossing parameter toward j
    std::vector<Rat> c(p.ambient_dim());
    for (size_t k = 0; k < c.size(); ++k)
      c[k] = Rat(p.vertices()[i][k]) +
             t * (Rat(p.vertices()[j][k]) - Rat(p.vertices()[i][k]));
    out.upper.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

inline bool polytope_mutable(const LatticePolytope& p, const IntVec& w,
                             const LatticePolytope& a) {
  return detail::polytope_mutation_data(p, w, a, false).ok;
}

inline LatticePolytope mutate_polytope(const LatticePolytope& p,
                                       const IntVec& w,
                                       const LatticePolytope& a) {
  detail::PolytopeMutation data =
      detail::polytope_mutation_data(p, w, a, true);
  if (!data.ok) throw domain_error("not-mutable", data.why);

  Int den = 1;
  for (const auto& q : data.upper)
    for (const Rat& c : q) den = den / gcd(den, denominator(c)) * denominator(c);
  std::vector<IntVec> pts;
  for (const IntVec& z : data.lower) pts.push_back(vec_scale(den, z));
  for (const auto& q : data.upper) {
    IntVec z(q.size());
    for (size_t i = 0; i < q.size(); ++i)
      z[i] = numerator(q[i]) * (den / denominator(q[i]));
    pts.push_back(std::move(z));
  }
  LatticePolytope scaled = LatticePolytope::hull(pts, p.ambient_dim());
  std::vector<IntVec> verts;
  for (const IntVec& v : scaled.vertices()) {
    IntVec z(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i] % den != 0)
        throw domain_error("internal-error",
                           "mutation produced a non-lattice vertex");
      z[i] = v[i] / den;
    }
    verts.push_back(std::move(z));
  }
  return LatticePolytope::hull(verts, p.ambient_dim());
}

}  // namespace fanomut
