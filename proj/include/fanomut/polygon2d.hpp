#pragma once

// Cone-by-cone analysis of Fano polygons. Every boundary edge spans a cone
// at the origin; peeling maximal standard subcones off the ccw-first end
// leaves a residual cone whose quotient type and lattice points drive both
// the singularity data and the coefficient family below.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fanomut/mutation.hpp"

namespace fanomut {

struct ConeData {
  size_t edge = 0;      // facet index in the polygon
  IntVec inward;        // primitive inward normal of the edge
  Int r;                // lattice height of the edge
  Int d;                // lattice length of the edge
  Int n;                // number of standard subcones peeled off
  Int s;                // leftover length, d = n*r + s with 0 <= s < r
  IntVec direction;     // primitive edge direction, ccw
  IntMat to_local;      // unimodular map; second local coord is the height
  Int c;                // local first coordinate of the ccw-first vertex
  // rays of the residual cone in ambient coordinates (present when s > 0)
  std::optional<std::pair<IntVec, IntVec>> residual_rays;
  std::optional<std::pair<Int, Int>> residue;  // quotient type (m, q)
  std::vector<IntVec> residual_points;         // ambient, level asc then x asc
};

namespace detail {

// quotient type of the cone on primitive rays u, v, reported as (m, q) with
// q the smaller of the two inverse-related representatives
inline std::pair<Int, Int> canonical_quotient(const IntVec& u,
                                              const IntVec& v) {
  Int m = u[0] * v[1] - u[1] * v[0];
  if (m < 0) m = -m;
  if (m == 0)
    throw domain_error("internal-error", "degenerate cone rays");
  if (m == 1) return {1, 0};
  // map u to (0,1), then v to (m, b) up to shears in the first coordinate
  Int g, x, y;
  g = ext_gcd(u[0], u[1], x, y);
  // rows (-u1, u0) and (x, y): determinant -(u1*y + u0*x) = -1
  Int a = -u[1] * v[0] + u[0] * v[1];
  Int b = x * v[0] + y * v[1];
  if (a < 0) {
    a = -a;  // flip the first coordinate; u image is unchanged
  }
  Int q = ((-b) % m + m) % m;
  if (gcd(q, m) != 1)
    throw domain_error("internal-error", "quotient parameter not coprime");
  // inverse representative
  Int qi, t;
  ext_gcd(q, m, qi, t);
  qi = (qi % m + m) % m;
  return {m, std::min(q, qi)};
}

inline void require_fano_polygon(const LatticePolytope& p) {
  if (p.ambient_dim() != 2)
    throw domain_error("unsupported-dimension", "polygon routines are 2D");
  if (!p.full_dim())
    throw domain_error("degenerate-input", "polygon must be full-dimensional");
  if (!p.is_fano())
    throw domain_error("not-fano",
                       "needs primitive vertices and the origin inside");
}

}  // namespace detail

inline std::vector<ConeData> cone_decomposition(const LatticePolytope& p) {
  detail::require_fano_polygon(p);
  std::vector<ConeData> out;
  for (size_t fi = 0; fi < p.facets().size(); ++fi) {
    const Facet& f = p.facets()[fi];
    ConeData cd;
    cd.edge = fi;
    cd.inward = f.normal;
    cd.r = f.offset;
    const IntVec& v1 = p.vertices()[f.vertices[0]];
    const IntVec& v2 = p.vertices()[f.vertices[1]];
    IntVec delta = vec_sub(v2, v1);
    cd.d = content(delta);
    cd.direction = primitive(delta);

    // local frame: second row is minus the inward normal so the edge sits
    // at height r; first row is oriented so the ccw-first vertex is left
    Int x, y;
    ext_gcd(f.normal[0], f.normal[1], x, y);
    IntMat u = {{-y, x}, {-f.normal[0], -f.normal[1]}};
    if (dot(u[0], v1) > dot(u[0], v2)) u[0] = vec_neg(u[0]);
    cd.to_local = u;
    cd.c = dot(u[0], v1);
    if (dot(u[0], v2) - cd.c != cd.d || dot(u[1], v1) != cd.r)
      throw domain_error("internal-error", "edge frame mismatch");

    cd.n = cd.d / cd.r;
    cd.s = cd.d % cd.r;
    if (cd.s > 0) {
      IntMat back = inverse_unimodular(u);
      IntVec rho1 = mat_apply(back, {cd.c + cd.n * cd.r, cd.r});
      IntVec rho2 = v2;
      cd.residue = detail::canonical_quotient(rho1, rho2);
      auto tri = LatticePolytope::hull({IntVec{0, 0}, rho1, rho2}, 2);
      std::vector<std::pair<std::pair<Int, Int>, IntVec>> keyed;
      for (const IntVec& z : tri.lattice_points()) {
        if (is_zero(z) || z == rho1 || z == rho2) continue;
        keyed.push_back({{-dot(f.normal, z), dot(u[0], z)}, z});
      }
      std::sort(keyed.begin(), keyed.end());
      for (auto& [k, z] : keyed) cd.residual_points.push_back(std::move(z));
      cd.residual_rays = {rho1, rho2};
    }
    out.push_back(std::move(cd));
  }
  return out;
}

struct SingularityContent {
  Int t_cone_count = 0;
  std::vector<std::pair<Int, Int>> basket;  // sorted quotient types
};

inline bool operator==(const SingularityContent& a,
                       const SingularityContent& b) {
  return a.t_cone_count == b.t_cone_count && a.basket == b.basket;
}

inline SingularityContent singularity_content(const LatticePolytope& p) {
  SingularityContent sc;
  for (const ConeData& cd : cone_decomposition(p)) {
    sc.t_cone_count += cd.n;
    if (cd.residue) sc.basket.push_back(*cd.residue);
  }
  std::sort(sc.basket.begin(), sc.basket.end());
  return sc;
}

struct MmlpFamily {
  LaurentPolynomial f;
  // parameter name and the lattice point whose coefficient it is
  std::vector<std::pair<std::string, IntVec>> parameters;
};

namespace detail {

// one divisibility block: the slice at distance level below edge `cone`
struct FamilyRow {
  size_t cone;
  Int level;
};

inline std::vector<AffineForm> solve_row_system(
    const std::vector<std::vector<Int>>& lhs, std::vector<AffineForm> rhs,
    size_t unknowns) {
  size_t rows = lhs.size();
  std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(unknowns));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < unknowns; ++j) m[i][j] = Rat(lhs[i][j]);
  std::vector<size_t> pivot_row(unknowns, rows);
  size_t rank = 0;
  for (size_t col = 0; col < unknowns && rank < rows; ++col) {
    size_t sel = rank;
    while (sel < rows && m[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[rank]);
    std::swap(rhs[sel], rhs[rank]);
    Rat inv = Rat(1) / m[rank][col];
    for (size_t j = col; j < unknowns; ++j) m[rank][j] *= inv;
    rhs[rank] = rhs[rank] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][col] == 0) continue;
      Rat factor = m[i][col];
      for (size_t j = col; j < unknowns; ++j) m[i][j] -= factor * m[rank][j];
      rhs[i] -= rhs[rank] * factor;
    }
    pivot_row[col] = rank;
    ++rank;
  }
  for (size_t i = rank; i < rows; ++i)
    if (!rhs[i].is_zero())
      throw domain_error("internal-error", "inconsistent coefficient system");
  std::vector<AffineForm> out(unknowns);
  for (size_t col = 0; col < unknowns; ++col) {
    if (pivot_row[col] == rows)
      throw domain_error("internal-error", "underdetermined coefficient row");
    out[col] = rhs[pivot_row[col]];
  }
  return out;
}

}  // namespace detail

// the widest coefficient family on P compatible with every edge mutation:
// vertices carry 1, the origin 0, residual points free parameters, and the
// slice below each edge is divisible by the matching binomial power. Rows
// are solved from the boundary inward; a slice line supports the scaled
// polygon t*P, so everything on it beyond the cone lies strictly outside
// t*P and was settled by an earlier row.
inline MmlpFamily mmlp_family(const LatticePolytope& p) {
  std::vector<ConeData> cones = cone_decomposition(p);
  std::vector<IntVec> points = p.lattice_points();

  std::map<IntVec, AffineForm> value;
  value[IntVec{0, 0}] = AffineForm(0);
  for (const IntVec& v : p.vertices()) value[v] = AffineForm(1);

  MmlpFamily fam;
  fam.f = LaurentPolynomial(2);
  for (const ConeData& cd : cones)
    for (const IntVec& z : cd.residual_points) {
      std::string name = "a" + std::to_string(fam.parameters.size() + 1);
      value[z] = AffineForm::parameter(name);
      fam.parameters.push_back({name, z});
    }

  std::vector<detail::FamilyRow> rows;
  for (size_t ci = 0; ci < cones.size(); ++ci)
    for (Int l = 1; l <= cones[ci].r; ++l) rows.push_back({ci, l});
  std::sort(rows.begin(), rows.end(),
            [&](const detail::FamilyRow& a, const detail::FamilyRow& b) {
              // descending level/r, then ascending edge index
              Int lhs = a.level * cones[b.cone].r;
              Int rhs = b.level * cones[a.cone].r;
              if (lhs != rhs) return lhs > rhs;
              return a.cone < b.cone;
            });

  for (const detail::FamilyRow& row : rows) {
    const ConeData& cd = cones[row.cone];
    // lattice points of P on the slice line, left to right
    std::vector<std::pair<Int, const IntVec*>> line;
    for (const IntVec& z : points)
      if (-dot(cd.inward, z) == row.level)
        line.push_back({dot(cd.to_local[0], z), &z});
    std::sort(line.begin(), line.end());
    if (line.empty()) continue;

    Int e_pow = row.level * cd.n;
    Int x_min = line.front().first;
    std::vector<size_t> unknown_pos;
    std::vector<const IntVec*> unknown_pt;
    for (size_t i = 0; i < line.size(); ++i) {
      const IntVec& z = *line[i].second;
      if (value.count(z)) continue;
      Int xl = line[i].first;
      bool in_cone = cd.c * row.level <= xl * cd.r &&
                     xl * cd.r <= (cd.c + cd.d) * row.level;
      if (!in_cone)
        throw domain_error("internal-error",
                           "slice point outside its cone is unsolved");
      unknown_pos.push_back(i);
      unknown_pt.push_back(&z);
    }
    if (e_pow == 0) {
      if (!unknown_pos.empty())
        throw domain_error("internal-error",
                           "free point in a cone without subcones");
      continue;
    }

    // divisibility by (1+x)^e_pow: alternating binomial sums vanish
    size_t nu = unknown_pos.size();
    std::vector<std::vector<Int>> lhs;
    std::vector<AffineForm> rhs;
    for (Int j = 0; j < e_pow; ++j) {
      std::vector<Int> lrow(nu, 0);
      AffineForm acc(0);
      size_t next_unknown = 0;
      for (size_t i = 0; i < line.size(); ++i) {
        Int q = line[i].first - x_min;
        Int weight = binomial(q, j);
        if ((q % 2) != 0) weight = -weight;
        if (next_unknown < nu && unknown_pos[next_unknown] == i) {
          lrow[next_unknown] = weight;
          ++next_unknown;
        } else {
          acc += value.at(*line[i].second) * Rat(weight);
        }
      }
      lhs.push_back(std::move(lrow));
      rhs.push_back(-acc);
    }
    std::vector<AffineForm> sol = detail::solve_row_system(lhs, rhs, nu);
    for (size_t k = 0; k < nu; ++k) value[*unknown_pt[k]] = sol[k];
  }

  for (const IntVec& z : points) {
    auto it = value.find(z);
    if (it == value.end())
      throw domain_error("internal-error", "lattice point left unsolved");
    fam.f.set_coefficient(z, it->second);
  }

  // every slice really is divisible, for all parameter values at once
  for (const ConeData& cd : cones) {
    for (Int l = 1; l <= cd.r; ++l) {
      std::vector<std::pair<Int, AffineForm>> line;
      for (const IntVec& z : points)
        if (-dot(cd.inward, z) == l)
          line.push_back({dot(cd.to_local[0], z), fam.f.coefficient(z)});
      if (line.empty()) continue;
      std::sort(line.begin(), line.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      Int x_min = line.front().first;
      for (Int j = 0; j < l * cd.n; ++j) {
        AffineForm acc(0);
        for (const auto& [xl, c] : line) {
          Int q = xl - x_min;
          Int weight = binomial(q, j);
          if ((q % 2) != 0) weight = -weight;
          acc += c * Rat(weight);
        }
        if (!acc.is_zero())
          throw domain_error("internal-error", "family check failed");
      }
    }
  }
  if (!(fam.f.newton_polytope() == p))
    throw domain_error("internal-error", "family support shrank");
  return fam;
}

inline bool is_rigid_2d(const LatticePolytope& p) {
  return mmlp_family(p).parameters.empty();
}

inline LaurentPolynomial rigid_mmlp_2d(const LatticePolytope& p) {
  MmlpFamily fam = mmlp_family(p);
  if (!fam.parameters.empty())
    throw domain_error("not-rigid",
                       "family has " + std::to_string(fam.parameters.size()) +
                           " free parameters");
  return fam.f;
}

struct EdgeMutation {
  IntVec w;                  // inward edge normal
  LaurentPolynomial factor;  // (1 + x^direction)^j
  size_t edge = 0;
  Int power = 1;             // j
};

inline std::vector<EdgeMutation> edge_mutation_set(const LatticePolytope& p) {
  std::vector<EdgeMutation> out;
  for (const ConeData& cd : cone_decomposition(p)) {
    LaurentPolynomial base =
        LaurentPolynomial::monomial(IntVec{0, 0}, AffineForm(1)) +
        LaurentPolynomial::monomial(cd.direction, AffineForm(1));
    for (Int j = 1; j <= cd.n; ++j)
      out.push_back({cd.inward, base.power(detail::to_power(j)), cd.edge, j});
  }
  return out;
}

}  // namespace fanomut
