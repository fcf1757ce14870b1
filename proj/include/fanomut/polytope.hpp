#pragma once

// Lattice polytopes in ambient dimension 1..3, exact arithmetic throughout.
// Full-dimensional polytopes carry a facet description; lower-dimensional
// ones (mutation factors, Newton polytopes of slices) carry an affine chart.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fanomut/lattice.hpp"

namespace fanomut {

inline Int det2(const IntVec& a, const IntVec& b) {
  return a[0] * b[1] - a[1] * b[0];
}

inline IntVec cross3(const IntVec& a, const IntVec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

// normal * x >= -offset for every x in P, equality exactly on the facet.
// normal is primitive and points inward. For origin-interior polytopes
// offset is the lattice height of the facet.
struct Facet {
  IntVec normal;
  Int offset;
  std::vector<size_t> vertices;  // indices into the vertex list; cyclic in 3D
};

struct EdgeFace {
  size_t a, b;        // endpoint vertex indices
  size_t f1, f2;      // adjacent facets (3D only; f1 < f2)
};

struct RationalPolytope {
  size_t dim = 0;
  std::vector<std::vector<Rat>> vertices;
  // facet -> vertex indices, cyclic in 3D; filled when built as a dual
  std::vector<std::vector<size_t>> facets;
};

namespace detail {

// ccw hull of 2D points, starting at the lexicographically smallest vertex
inline std::vector<IntVec> hull2_ccw(std::vector<IntVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<IntVec> lower, upper;
  for (const IntVec& p : pts) {
    while (lower.size() >= 2 &&
           det2(vec_sub(lower.back(), lower[lower.size() - 2]),
                vec_sub(p, lower[lower.size() - 2])) <= 0)
      lower.pop_back();
    lower.push_back(p);
  }
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    const IntVec& p = *it;
    while (upper.size() >= 2 &&
           det2(vec_sub(upper.back(), upper[upper.size() - 2]),
                vec_sub(p, upper[upper.size() - 2])) <= 0)
      upper.pop_back();
    upper.push_back(p);
  }
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;  // ccw, starts at lex-min
}

inline size_t affine_rank(const std::vector<IntVec>& pts) {
  if (pts.empty()) return 0;
  IntMat diffs;
  for (size_t i = 1; i < pts.size(); ++i)
    diffs.push_back(vec_sub(pts[i], pts[0]));
  if (diffs.empty()) return 0;
  return sublattice_generated(diffs, pts[0].size()).rank;
}

// basis rows of {x in Z^n : M x = 0}
inline IntMat kernel_lattice(const IntMat& m, size_t ncols) {
  IntMat mt(ncols, IntVec(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < ncols; ++j) mt[j][i] = m[i][j];
  HnfResult hr = hermite_normal_form(mt);
  IntMat out;
  for (size_t i = 0; i < hr.h.size(); ++i) {
    if (is_zero(hr.h[i])) out.push_back(hr.u[i]);
  }
  return out;
}

// basis of (Q-span of the rows) intersected with Z^n
inline IntMat span_saturation(const IntMat& rows, size_t n) {
  if (rows.empty()) return {};
  IntMat normals = kernel_lattice(rows, n);
  if (normals.empty()) return identity_matrix(n);
  IntMat sat = kernel_lattice(normals, n);
  return hermite_normal_form(sat).h;
}

}  // namespace detail

class LatticePolytope {
 public:
  // Hull of points. When require_full_dim and the affine dimension falls
  // short of the ambient one, raises "degenerate-input" naming the span.
  static LatticePolytope hull(const std::vector<IntVec>& points,
                              size_t ambient_dim, bool require_full_dim = true) {
    if (points.empty())
      throw domain_error("empty-input", "convex hull of no points");
    for (const IntVec& p : points) {
      if (p.size() != ambient_dim)
        throw domain_error("dimension-mismatch", "point/ambient dim disagree");
    }
    if (ambient_dim < 1 || ambient_dim > 3)
      throw domain_error("unsupported-dimension", "ambient dimension must be 1..3");
    LatticePolytope p;
    p.ambient_dim_ = ambient_dim;
    std::vector<IntVec> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    size_t arank = detail::affine_rank(pts);
    p.affine_dim_ = arank;
    if (arank < ambient_dim) {
      if (require_full_dim) {
        IntMat diffs;
        for (size_t i = 1; i < pts.size(); ++i)
          diffs.push_back(vec_sub(pts[i], pts[0]));
        IntMat span = detail::span_saturation(diffs, ambient_dim);
        std::ostringstream os;
        os << "hull has affine dimension " << arank << " < " << ambient_dim
           << "; affine span basis:";
        for (const IntVec& b : span) {
          os << " (";
          for (size_t j = 0; j < b.size(); ++j)
            os << (j ? "," : "") << b[j];
          os << ")";
        }
        throw domain_error("degenerate-input", os.str());
      }
      p.build_deficient(pts);
      return p;
    }
    p.build_full(pts);
    return p;
  }

  size_t ambient_dim() const { return ambient_dim_; }
  size_t dim() const { return affine_dim_; }
  const std::vector<IntVec>& vertices() const { return vertices_; }
  bool full_dim() const { return affine_dim_ == ambient_dim_; }

  const std::vector<Facet>& facets() const {
    require_full("facets");
    return facets_;
  }

  const std::vector<EdgeFace>& edges() const {
    require_full("edges");
    if (ambient_dim_ != 3)
      throw domain_error("unsupported-dimension", "edge list is for 3D polytopes");
    return edges_;
  }

  bool contains(const IntVec& pt) const {
    std::vector<Rat> q(pt.size());
    for (size_t i = 0; i < pt.size(); ++i) q[i] = Rat(pt[i]);
    return contains_rational(q);
  }

  bool contains_rational(const std::vector<Rat>& pt) const {
    if (full_dim()) {
      for (const Facet& f : facets_) {
        Rat s = Rat(f.offset);
        for (size_t i = 0; i < ambient_dim_; ++i) s += Rat(f.normal[i]) * pt[i];
        if (s < 0) return false;
      }
      return true;
    }
    // affine chart: pt = origin + coords * basis with coords in flat polytope
    std::vector<std::vector<Rat>> at(ambient_dim_,
                                     std::vector<Rat>(chart_basis_.size()));
    for (size_t i = 0; i < chart_basis_.size(); ++i)
      for (size_t j = 0; j < ambient_dim_; ++j)
        at[j][i] = Rat(chart_basis_[i][j]);
    std::vector<Rat> rhs(ambient_dim_);
    for (size_t j = 0; j < ambient_dim_; ++j)
      rhs[j] = pt[j] - Rat(chart_origin_[j]);
    if (affine_dim_ == 0) {
      for (const Rat& r : rhs)
        if (r != 0) return false;
      return true;
    }
    auto sol = solve_unique(at, rhs);
    if (!sol) return false;
    return flat_->contains_rational(*sol);
  }

  bool contains_polytope(const LatticePolytope& other) const {
    for (const IntVec& v : other.vertices())
      if (!contains(v)) return false;
    return true;
  }

  // all lattice points, lexicographically sorted
  std::vector<IntVec> lattice_points() const {
    if (!full_dim()) {
      std::vector<IntVec> out;
      if (affine_dim_ == 0) {
        out.push_back(chart_origin_);
        return out;
      }
      for (const IntVec& q : flat_->lattice_points()) {
        IntVec p = chart_origin_;
        for (size_t i = 0; i < chart_basis_.size(); ++i)
          p = vec_add(p, vec_scale(q[i], chart_basis_[i]));
        out.push_back(p);
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    IntVec lo = vertices_[0], hi = vertices_[0];
    for (const IntVec& v : vertices_)
      for (size_t i = 0; i < ambient_dim_; ++i) {
        lo[i] = std::min(lo[i], v[i]);
        hi[i] = std::max(hi[i], v[i]);
      }
    std::vector<IntVec> out;
    IntVec cur = lo;
    while (true) {
      if (contains(cur)) out.push_back(cur);
      size_t i = ambient_dim_;
      while (i > 0) {
        --i;
        if (cur[i] < hi[i]) {
          ++cur[i];
          for (size_t j = i + 1; j < ambient_dim_; ++j) cur[j] = lo[j];
          break;
        }
        if (i == 0) return out;
      }
    }
  }

  bool origin_interior() const {
    require_full("origin_interior");
    for (const Facet& f : facets_)
      if (f.offset < 1) return false;
    return true;
  }

  // full-dimensional, origin strictly interior, every vertex primitive
  bool is_fano() const {
    if (!full_dim()) return false;
    if (!origin_interior()) return false;
    for (const IntVec& v : vertices_) {
      if (is_zero(v) || content(v) != 1) return false;
    }
    return true;
  }

  bool is_reflexive() const {
    require_full("is_reflexive");
    if (!origin_interior()) return false;
    for (const Facet& f : facets_)
      if (f.offset != 1) return false;
    return true;
  }

  // dim! times Euclidean volume
  Int normalized_volume() const {
    require_full("normalized_volume");
    if (ambient_dim_ == 1) return vertices_[1][0] - vertices_[0][0];
    if (ambient_dim_ == 2) {
      Int s = 0;
      for (size_t i = 1; i + 1 < vertices_.size(); ++i)
        s += det2(vec_sub(vertices_[i], vertices_[0]),
                  vec_sub(vertices_[i + 1], vertices_[0]));
      return s;  // vertices are ccw, every term is positive
    }
    Int s = 0;
    const IntVec& apex = vertices_[0];
    for (const Facet& f : facets_) {
      bool has_apex = false;
      for (size_t vi : f.vertices)
        if (vi == 0) has_apex = true;
      if (has_apex) continue;
      const IntVec& f0 = vertices_[f.vertices[0]];
      for (size_t i = 1; i + 1 < f.vertices.size(); ++i) {
        IntVec a = vec_sub(f0, apex);
        IntVec b = vec_sub(vertices_[f.vertices[i]], apex);
        IntVec c = vec_sub(vertices_[f.vertices[i + 1]], apex);
        Int d = dot(a, cross3(b, c));
        s += d < 0 ? -d : d;  // all terms in one facet fan share a sign
      }
    }
    return s;
  }

  LatticePolytope translate(const IntVec& t) const {
    std::vector<IntVec> pts;
    pts.reserve(vertices_.size());
    for (const IntVec& v : vertices_) pts.push_back(vec_add(v, t));
    return hull(pts, ambient_dim_, false);
  }

  LatticePolytope apply(const IntMat& u) const {
    if (!is_unimodular(u))
      throw domain_error("not-unimodular", "polytope map must be unimodular");
    std::vector<IntVec> pts;
    pts.reserve(vertices_.size());
    for (const IntVec& v : vertices_) pts.push_back(mat_apply(u, v));
    return hull(pts, ambient_dim_, false);
  }

  LatticePolytope dilate(const Int& k) const {
    std::vector<IntVec> pts;
    pts.reserve(vertices_.size());
    for (const IntVec& v : vertices_) pts.push_back(vec_scale(k, v));
    return hull(pts, ambient_dim_, false);
  }

  LatticePolytope minkowski(const LatticePolytope& other) const {
    std::vector<IntVec> pts;
    for (const IntVec& v : vertices_)
      for (const IntVec& w : other.vertices()) pts.push_back(vec_add(v, w));
    return hull(pts, ambient_dim_, false);
  }

  bool operator==(const LatticePolytope& o) const {
    return ambient_dim_ == o.ambient_dim_ && vertices_ == o.vertices_;
  }

  RationalPolytope dual() const {
    require_full("dual");
    if (!origin_interior())
      throw domain_error("origin-not-interior",
                         "dual needs the origin strictly inside");
    RationalPolytope d;
    d.dim = ambient_dim_;
    for (const Facet& f : facets_) {
      std::vector<Rat> u(ambient_dim_);
      for (size_t i = 0; i < ambient_dim_; ++i)
        u[i] = Rat(f.normal[i]) / Rat(f.offset);
      d.vertices.push_back(u);
    }
    // one dual facet per primal vertex: the facets through that vertex
    for (size_t vi = 0; vi < vertices_.size(); ++vi)
      d.facets.push_back(facets_around_vertex(vi));
    return d;
  }

  std::string text() const {
    std::ostringstream os;
    os << "dim " << ambient_dim_ << "\n";
    for (const IntVec& v : vertices_) {
      for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
      os << "\n";
    }
    return os.str();
  }

  static LatticePolytope parse(const std::string& text,
                               bool require_full_dim = true);

  std::string normal_form_key() const;

 private:
  void require_full(const char* op) const {
    if (!full_dim())
      throw domain_error("degenerate-input",
                         std::string(op) + " needs a full-dimensional polytope");
  }

  void build_full(const std::vector<IntVec>& pts) {
    if (ambient_dim_ == 1) {
      IntVec lo = pts.front(), hi = pts.back();  // pts sorted
      vertices_ = {lo, hi};
      facets_.push_back({{Int(1)}, -lo[0], {0}});
      facets_.push_back({{Int(-1)}, hi[0], {1}});
      return;
    }
    if (ambient_dim_ == 2) {
      vertices_ = detail::hull2_ccw(pts);
      size_t n = vertices_.size();
      for (size_t i = 0; i < n; ++i) {
        size_t j = (i + 1) % n;
        IntVec d = vec_sub(vertices_[j], vertices_[i]);
        IntVec normal = primitive(IntVec{-d[1], d[0]});  // inward for ccw
        facets_.push_back({normal, -dot(normal, vertices_[i]), {i, j}});
      }
      return;
    }
    build_full_3d(pts);
  }

  void build_full_3d(const std::vector<IntVec>& pts) {
    size_t n = pts.size();
    std::set<std::pair<IntVec, Int>> planes;  // (inward normal, offset)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        for (size_t k = j + 1; k < n; ++k) {
          IntVec nrm = cross3(vec_sub(pts[j], pts[i]), vec_sub(pts[k], pts[i]));
          if (is_zero(nrm)) continue;
          Int base = dot(nrm, pts[i]);
          bool above = false, below = false;
          for (size_t l = 0; l < n; ++l) {
            Int s = dot(nrm, pts[l]) - base;
            if (s > 0) above = true;
            if (s < 0) below = true;
            if (above && below) break;
          }
          if (above && below) continue;
          IntVec w = above ? primitive(nrm) : primitive(vec_neg(nrm));
          planes.insert({w, -dot(w, pts[i])});
        }
    // vertices: points whose incident supporting planes span 3D
    std::vector<std::vector<size_t>> on_plane(planes.size());
    std::vector<std::pair<IntVec, Int>> plane_list(planes.begin(), planes.end());
    std::vector<IntVec> verts;
    for (size_t l = 0; l < n; ++l) {
      IntMat incident;
      for (const auto& [w, c] : plane_list) {
        if (dot(w, pts[l]) + c == 0) incident.push_back(w);
      }
      if (incident.size() >= 3 &&
          sublattice_generated(incident, 3).rank == 3)
        verts.push_back(pts[l]);
    }
    std::sort(verts.begin(), verts.end());
    vertices_ = verts;
    for (const auto& [w, c] : plane_list) {
      Facet f;
      f.normal = w;
      f.offset = c;
      for (size_t vi = 0; vi < vertices_.size(); ++vi)
        if (dot(w, vertices_[vi]) + c == 0) f.vertices.push_back(vi);
      sort_facet_cycle(f);
      facets_.push_back(f);
    }
    std::sort(facets_.begin(), facets_.end(),
              [](const Facet& a, const Facet& b) {
                return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
              });
    std::vector<std::vector<size_t>> sorted_fv(facets_.size());
    for (size_t i = 0; i < facets_.size(); ++i) {
      sorted_fv[i] = facets_[i].vertices;
      std::sort(sorted_fv[i].begin(), sorted_fv[i].end());
    }
    for (size_t i = 0; i < facets_.size(); ++i)
      for (size_t j = i + 1; j < facets_.size(); ++j) {
        std::vector<size_t> common;
        std::set_intersection(sorted_fv[i].begin(), sorted_fv[i].end(),
                              sorted_fv[j].begin(), sorted_fv[j].end(),
                              std::back_inserter(common));
        if (common.size() == 2)
          edges_.push_back({common[0], common[1], i, j});
      }
  }

  void sort_facet_cycle(Facet& f) {
    if (f.vertices.size() <= 3) {
      std::sort(f.vertices.begin(), f.vertices.end());
      return;
    }
    // exact polar sort in the facet plane around the vertex sum
    const IntVec& v0 = vertices_[f.vertices[0]];
    IntVec u;
    for (size_t idx : f.vertices) {
      IntVec d = vec_sub(vertices_[idx], v0);
      if (!is_zero(d)) {
        u = d;
        break;
      }
    }
    IntVec s = cross3(f.normal, u);
    size_t m = f.vertices.size();
    std::vector<std::pair<Int, Int>> xy(m);
    Int cx = 0, cy = 0;
    for (size_t i = 0; i < m; ++i) {
      IntVec d = vec_sub(vertices_[f.vertices[i]], v0);
      xy[i] = {dot(d, u), dot(d, s)};
      cx += xy[i].first;
      cy += xy[i].second;
    }
    // compare angles of (m*p - c) exactly
    auto half = [&](const std::pair<Int, Int>& p) {
      Int px = Int(m) * p.first - cx, py = Int(m) * p.second - cy;
      if (py != 0) return py > 0 ? 0 : 1;
      return px > 0 ? 0 : 1;
    };
    std::vector<size_t> order(m);
    for (size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      int ha = half(xy[a]), hb = half(xy[b]);
      if (ha != hb) return ha < hb;
      Int ax = Int(m) * xy[a].first - cx, ay = Int(m) * xy[a].second - cy;
      Int bx = Int(m) * xy[b].first - cx, by = Int(m) * xy[b].second - cy;
      Int cr = ax * by - ay * bx;
      if (cr != 0) return cr > 0;
      return f.vertices[a] < f.vertices[b];
    });
    std::vector<size_t> cyc(m);
    for (size_t i = 0; i < m; ++i) cyc[i] = f.vertices[order[i]];
    // deterministic start: smallest vertex index first, orientation kept
    size_t start = 0;
    for (size_t i = 1; i < m; ++i)
      if (cyc[i] < cyc[start]) start = i;
    f.vertices.clear();
    for (size_t i = 0; i < m; ++i) f.vertices.push_back(cyc[(start + i) % m]);
  }

  void build_deficient(const std::vector<IntVec>& pts) {
    chart_origin_ = pts[0];
    if (affine_dim_ == 0) {
      vertices_ = {pts[0]};
      return;
    }
    IntMat diffs;
    for (size_t i = 1; i < pts.size(); ++i)
      diffs.push_back(vec_sub(pts[i], pts[0]));
    chart_basis_ = detail::span_saturation(diffs, ambient_dim_);
    SublatticeReport rep;
    rep.ambient_dim = ambient_dim_;
    rep.rank = chart_basis_.size();
    rep.basis = chart_basis_;
    std::vector<IntVec> rel;
    for (const IntVec& p : pts) rel.push_back(vec_sub(p, chart_origin_));
    std::vector<IntVec> flat_pts = restrict_to_sublattice(rel, rep);
    flat_ = std::make_shared<LatticePolytope>(
        hull(flat_pts, affine_dim_, true));
    for (const IntVec& q : flat_->vertices()) {
      IntVec p = chart_origin_;
      for (size_t i = 0; i < chart_basis_.size(); ++i)
        p = vec_add(p, vec_scale(q[i], chart_basis_[i]));
      vertices_.push_back(p);
    }
    std::sort(vertices_.begin(), vertices_.end());
  }

  std::vector<size_t> facets_around_vertex(size_t vi) const {
    std::vector<size_t> inc;
    for (size_t fi = 0; fi < facets_.size(); ++fi)
      for (size_t x : facets_[fi].vertices)
        if (x == vi) inc.push_back(fi);
    if (ambient_dim_ != 3 || inc.size() <= 2) {
      std::sort(inc.begin(), inc.end());
      return inc;
    }
    // walk the facet cycle around the vertex via shared edges
    std::vector<size_t> cycle;
    std::set<size_t> remaining(inc.begin(), inc.end());
    size_t cur = *remaining.begin();
    cycle.push_back(cur);
    remaining.erase(cur);
    while (!remaining.empty()) {
      bool advanced = false;
      for (const EdgeFace& e : edges_) {
        if (e.a != vi && e.b != vi) continue;
        size_t other = size_t(-1);
        if (e.f1 == cur && remaining.count(e.f2)) other = e.f2;
        if (e.f2 == cur && remaining.count(e.f1)) other = e.f1;
        if (other != size_t(-1)) {
          cycle.push_back(other);
          remaining.erase(other);
          cur = other;
          advanced = true;
          break;
        }
      }
      if (!advanced)
        throw domain_error("internal-error", "facet cycle walk failed");
    }
    return cycle;
  }

 public:
  // exposed for tests of the face structure
  std::vector<size_t> facet_cycle_at_vertex(size_t vi) const {
    require_full("facet_cycle_at_vertex");
    return facets_around_vertex(vi);
  }

 private:
  size_t ambient_dim_ = 0;
  size_t affine_dim_ = 0;
  std::vector<IntVec> vertices_;
  std::vector<Facet> facets_;
  std::vector<EdgeFace> edges_;
  // chart for affine-deficient polytopes
  IntVec chart_origin_;
  IntMat chart_basis_;
  std::shared_ptr<LatticePolytope> flat_;
};

inline Rat normalized_volume(const RationalPolytope& p) {
  if (p.dim == 1) {
    Rat lo = p.vertices[0][0], hi = p.vertices[0][0];
    for (const auto& v : p.vertices) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    return hi - lo;
  }
  if (p.facets.empty())
    throw domain_error("missing-facets", "rational volume needs facet data");
  auto sub = [&](const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
  };
  const std::vector<Rat>& apex = p.vertices[0];
  Rat total = 0;
  if (p.dim == 2) {
    for (const auto& f : p.facets) {
      if (f.size() != 2) continue;
      if (f[0] == 0 || f[1] == 0) continue;
      std::vector<Rat> a = sub(p.vertices[f[0]], apex);
      std::vector<Rat> b = sub(p.vertices[f[1]], apex);
      Rat d = a[0] * b[1] - a[1] * b[0];
      total += d < 0 ? -d : d;
    }
    return total;
  }
  for (const auto& f : p.facets) {
    bool has_apex = false;
    for (size_t vi : f)
      if (vi == 0) has_apex = true;
    if (has_apex) continue;
    const std::vector<Rat>& f0 = p.vertices[f[0]];
    for (size_t i = 1; i + 1 < f.size(); ++i) {
      std::vector<Rat> a = sub(f0, apex);
      std::vector<Rat> b = sub(p.vertices[f[i]], apex);
      std::vector<Rat> c = sub(p.vertices[f[i + 1]], apex);
      Rat d = a[0] * (b[1] * c[2] - b[2] * c[1]) -
              a[1] * (b[0] * c[2] - b[2] * c[0]) +
              a[2] * (b[0] * c[1] - b[1] * c[0]);
      total += d < 0 ? -d : d;
    }
  }
  return total;
}

// integral rational polytope -> lattice polytope; rebuilds the hull
inline LatticePolytope to_lattice(const RationalPolytope& p) {
  std::vector<IntVec> pts;
  for (const auto& v : p.vertices) {
    IntVec z(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      if (denominator(v[i]) != 1)
        throw domain_error("not-a-lattice-polytope",
                           "vertex coordinates are not integers");
      z[i] = numerator(v[i]);
    }
    pts.push_back(std::move(z));
  }
  return LatticePolytope::hull(std::move(pts), p.dim);
}

inline LatticePolytope LatticePolytope::parse(const std::string& text,
                                              bool require_full_dim) {
  std::istringstream is(text);
  std::string line;
  size_t dim = 0;
  bool have_dim = false;
  std::vector<IntVec> pts;
  while (std::getline(is, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> toks;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (!have_dim) {
      if (toks.size() != 2 || toks[0] != "dim")
        throw usage_error("polytope text must start with 'dim D'");
      dim = std::stoul(toks[1]);
      have_dim = true;
      continue;
    }
    if (toks.size() != dim)
      throw usage_error("polytope vertex line has wrong coordinate count");
    IntVec v;
    for (const std::string& t : toks) {
      try {
        v.push_back(Int(t));
      } catch (...) {
        throw usage_error("bad integer in polytope text: " + t);
      }
    }
    pts.push_back(v);
  }
  if (!have_dim || pts.empty())
    throw usage_error("polytope text needs a dim line and at least one point");
  return hull(pts, dim, require_full_dim);
}

}  // namespace fanomut
