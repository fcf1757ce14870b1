#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fanomut/lattice.hpp"
#include "fanomut/laurent.hpp"
#include "fanomut/mutation.hpp"
#include "fanomut/numbers.hpp"
#include "fanomut/parse.hpp"
#include "fanomut/polytope.hpp"

// Coefficient spaces cut out by mutability constraints, enumeration of
// candidate mutation data, and rigidity certification.

namespace fanomut {

struct MutationData {
  IntVec w;
  LaurentPolynomial factor;
};

struct MutationSearchBudget {
  int max_weight_entry = 3;    // |w_i| bound for the 3d weight scan
  int max_factor_support = 5;  // monomials allowed in a factor
  int max_factor_power = 3;    // segment length / triangle size cap
};

namespace detail {

inline void check_budget(const MutationSearchBudget& b) {
  if (b.max_weight_entry <= 0 || b.max_factor_support <= 0 ||
      b.max_factor_power <= 0)
    throw usage_error("search budget entries must be positive");
}

// factor slid along the wall so its lex-least exponent is the origin
inline LaurentPolynomial anchor_factor(const IntVec& w,
                                       const LaurentPolynomial& a) {
  check_factor(a, w);
  const IntVec& lo = a.terms().begin()->first;
  return a.mul_monomial(vec_neg(lo));
}

inline std::string vec_str(const IntVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace detail

// dedup key for mutation data; (w, a) and (w, a*x^b) agree for wall b,
// opposite weights stay distinct
inline std::string canonical_mutation_key(const IntVec& w,
                                          const LaurentPolynomial& a) {
  return detail::vec_str(w) + "|" + to_string(detail::anchor_factor(w, a));
}

// label of the graph edge cut by (w, a): the weight line and the factor
// class. A datum and its inverse render identically.
inline std::string canonical_edge_label(const IntVec& w,
                                        const LaurentPolynomial& a) {
  IntVec ww = w;
  for (const Int& x : w) {
    if (x == 0) continue;
    if (x < 0) ww = vec_neg(w);
    break;
  }
  return "L(" + detail::vec_str(ww) + "," +
         to_string(detail::anchor_factor(w, a)) + ")";
}

// one datum per line, "w= 2,-1 ; a= 1+x*y^2"; '#' starts a comment
inline std::vector<MutationData> parse_mutation_set(const std::string& text,
                                                    size_t dim) {
  std::vector<MutationData> out;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  auto fail = [&lineno](const std::string& why) -> void {
    throw domain_error("mutation-set",
                       "line " + std::to_string(lineno) + ": " + why);
  };
  auto trim = [](std::string s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    size_t semi = line.find(';');
    if (semi == std::string::npos) fail("expected 'w= ... ; a= ...'");
    auto strip_key = [&](std::string s, char key) {
      s = trim(s);
      size_t eq = s.find('=');
      if (s.empty() || s[0] != key || eq == std::string::npos ||
          !trim(s.substr(1, eq - 1)).empty())
        fail(std::string("expected '") + key + "='");
      return trim(s.substr(eq + 1));
    };
    std::string ws = strip_key(line.substr(0, semi), 'w');
    std::string as = strip_key(line.substr(semi + 1), 'a');
    IntVec w;
    std::istringstream cs(ws);
    std::string item;
    while (std::getline(cs, item, ',')) {
      item = trim(item);
      try {
        w.push_back(Int(item));
      } catch (const std::exception&) {
        fail("bad weight entry '" + item + "'");
      }
    }
    if (w.size() != dim)
      fail("weight has " + std::to_string(w.size()) + " entries, expected " +
           std::to_string(dim));
    LaurentPolynomial a;
    try {
      a = parse_polynomial(as, dim);
    } catch (const std::exception& ex) {
      fail(ex.what());
    }
    out.push_back({std::move(w), std::move(a)});
  }
  return out;
}

struct ConstraintNote {
  size_t datum = 0;  // index into the defining mutation set
  Int height;        // slice height the relation came from
  std::string relation;
};

struct CoefficientSpace {
  LaurentPolynomial base;  // coefficients affine in the free parameters
  std::vector<std::pair<std::string, IntVec>> parameters;  // name, own point
  std::vector<ConstraintNote> notes;
  bool empty = false;  // the constraints admit no solution
  size_t parameter_count() const { return parameters.size(); }
};

namespace detail {

// relations forced on the coefficients of `base` by divisibility of every
// negative slice by the matching factor power. `pts` lists the allowed
// support. Linear in the coefficients, so the same relations come back
// after any substitution into `base`.
inline void division_relations(
    const std::vector<IntVec>& pts, const LaurentPolynomial& base,
    const IntVec& w, const LaurentPolynomial& factor, size_t datum,
    std::vector<std::tuple<size_t, Int, AffineForm>>& out) {
  check_weight(w, base.dim());
  check_factor(factor, w);
  std::map<Int, std::vector<IntVec>> levels;
  for (const IntVec& p : pts) levels[dot(w, p)].push_back(p);
  for (const auto& [h, dpts] : levels) {
    if (h >= 0) continue;
    LaurentPolynomial apow = factor.power(to_power(-h));
    std::set<IntVec> dset(dpts.begin(), dpts.end());
    const IntVec& a0 = apow.terms().begin()->first;
    // quotient support: x with x + supp(a^|h|) inside the slice point set.
    // The slice points are exactly the lattice points of their own hull,
    // so the set test agrees with the convex one.
    std::vector<IntVec> qsup;
    for (const IntVec& p : dpts) {
      IntVec x = vec_sub(p, a0);
      bool ok = true;
      for (const auto& [s, c] : apow.terms())
        if (!dset.count(vec_add(x, s))) {
          ok = false;
          break;
        }
      if (ok) qsup.push_back(x);
    }
    // eliminate the quotient coefficients from  q * a^|h| = slice
    size_t cols = qsup.size();
    std::vector<std::vector<Rat>> m;
    std::vector<AffineForm> rhs;
    for (const IntVec& p : dpts) {
      std::vector<Rat> row(cols, Rat(0));
      for (size_t j = 0; j < cols; ++j) {
        AffineForm c = apow.coefficient(vec_sub(p, qsup[j]));
        if (!c.is_zero()) row[j] = c.constant();
      }
      m.push_back(std::move(row));
      rhs.push_back(base.coefficient(p));
    }
    std::vector<bool> used(m.size(), false);
    for (size_t col = 0; col < cols; ++col) {
      size_t piv = m.size();
      for (size_t r = 0; r < m.size(); ++r)
        if (!used[r] && m[r][col] != 0) {
          piv = r;
          break;
        }
      if (piv == m.size()) continue;
      used[piv] = true;
      for (size_t r = 0; r < m.size(); ++r) {
        if (r == piv || m[r][col] == 0) continue;
        Rat t = m[r][col] / m[piv][col];
        for (size_t c2 = col; c2 < cols; ++c2) m[r][c2] -= t * m[piv][c2];
        rhs[r] -= rhs[piv] * AffineForm(t);
      }
    }
    for (size_t r = 0; r < m.size(); ++r) {
      if (used[r]) continue;
      if (!rhs[r].is_zero()) out.push_back({datum, h, rhs[r]});
    }
  }
}

// substitute solved parameters, keeping the rest symbolic
inline AffineForm apply_subst(const AffineForm& f,
                              const std::map<std::string, AffineForm>& subst) {
  AffineForm r(f.constant());
  for (const auto& [k, v] : f.linear()) {
    auto it = subst.find(k);
    if (it == subst.end())
      r += AffineForm::parameter(k) * AffineForm(v);
    else
      r += it->second * AffineForm(v);
  }
  return r;
}

}  // namespace detail

// general element of the space of normalised zero-constant-term polynomials
// on P that stay mutable with respect to every supplied datum. Inconsistent
// constraints produce an empty space, not an error.
inline CoefficientSpace coefficient_space(const LatticePolytope& p,
                                          const std::vector<MutationData>& data) {
  if (!p.is_fano())
    throw domain_error("not-fano", "coefficient space wants a Fano polytope");
  size_t d = p.ambient_dim();
  std::vector<IntVec> pts = p.lattice_points();
  std::set<IntVec> vset(p.vertices().begin(), p.vertices().end());
  IntVec origin(d, 0);

  CoefficientSpace out;
  out.base = LaurentPolynomial(d);
  size_t next = 0;
  for (const IntVec& q : pts) {
    if (q == origin) continue;
    if (vset.count(q)) {
      out.base.set_coefficient(q, AffineForm(1));
    } else {
      std::string name = "a" + std::to_string(++next);
      out.parameters.push_back({name, q});
      out.base.set_coefficient(q, AffineForm::parameter(name));
    }
  }

  std::vector<std::tuple<size_t, Int, AffineForm>> rels;
  for (size_t i = 0; i < data.size(); ++i)
    detail::division_relations(pts, out.base, data[i].w, data[i].factor, i,
                               rels);

  std::map<std::string, size_t> order;
  for (size_t i = 0; i < out.parameters.size(); ++i)
    order[out.parameters[i].first] = i;
  std::map<std::string, AffineForm> subst;
  bool inconsistent = false;
  for (const auto& [datum, height, raw] : rels) {
    out.notes.push_back({datum, height, detail::affine_str(raw) + " = 0"});
    AffineForm f = detail::apply_subst(raw, subst);
    if (f.is_zero()) continue;
    // solve for the earliest parameter still present
    std::string pivot;
    size_t best = out.parameters.size();
    for (const auto& [k, v] : f.linear()) {
      size_t idx = order.at(k);
      if (idx < best) {
        best = idx;
        pivot = k;
      }
    }
    if (pivot.empty()) {
      inconsistent = true;
      continue;
    }
    Rat c = f.coeff(pivot);
    AffineForm solved = (AffineForm::parameter(pivot) * AffineForm(c) - f) / c;
    std::map<std::string, AffineForm> one{{pivot, solved}};
    for (auto& [k, v] : subst) v = detail::apply_subst(v, one);
    subst[pivot] = solved;
  }
  if (inconsistent) {
    out.empty = true;
    out.parameters.clear();
    return out;
  }

  LaurentPolynomial sub(d);
  for (const auto& [e, c] : out.base.terms())
    sub.set_coefficient(e, detail::apply_subst(c, subst));
  out.base = sub;
  std::vector<std::pair<std::string, IntVec>> free;
  for (const auto& pr : out.parameters)
    if (!subst.count(pr.first)) free.push_back(pr);
  out.parameters = std::move(free);
  for (const auto& [name, q] : out.parameters)
    if (!(out.base.coefficient(q) == AffineForm::parameter(name)))
      throw domain_error("internal-error", "free coefficient not preserved");
  // all division relations must now hold identically
  std::vector<std::tuple<size_t, Int, AffineForm>> check;
  for (size_t i = 0; i < data.size(); ++i)
    detail::division_relations(pts, out.base, data[i].w, data[i].factor, i,
                               check);
  for (const auto& [datum, height, f] : check)
    if (!f.is_zero())
      throw domain_error("internal-error", "eliminated relation survives");
  return out;
}

// a free parameter keeps its bare coefficient at its own point, so the
// values of any candidate member can be read off directly
inline bool space_contains(const CoefficientSpace& s,
                           const LaurentPolynomial& g) {
  if (s.empty) return false;
  if (g.dim() != s.base.dim())
    throw domain_error("dimension-mismatch", "space membership");
  for (const auto& [e, c] : g.terms())
    if (!c.is_constant())
      throw domain_error("parametric-input",
                         "membership of a parametric polynomial");
  std::map<std::string, Rat> vals;
  for (const auto& [name, q] : s.parameters)
    vals[name] = g.coefficient(q).constant();
  return s.base.specialize(vals) == g;
}

inline LaurentPolynomial space_element(const CoefficientSpace& s,
                                       const std::vector<Rat>& values) {
  if (s.empty)
    throw domain_error("empty-space", "no member to produce");
  if (values.size() != s.parameters.size())
    throw usage_error("expected " + std::to_string(s.parameters.size()) +
                      " parameter values");
  std::map<std::string, Rat> vals;
  for (size_t i = 0; i < values.size(); ++i)
    vals[s.parameters[i].first] = values[i];
  return s.base.specialize(vals);
}

namespace detail {

inline Int ipow(const Int& b, unsigned k) {
  Int r = 1;
  for (unsigned i = 0; i < k; ++i) r *= b;
  return r;
}

// every normalised factor with nonnegative integer coefficients along one
// edge: 1 + c_1 t + ... + c_{k-1} t^{k-1} + t^k in the edge direction,
// k*r bounded by the edge length. Monic divisors of the integer-scaled
// slice satisfy A(m)^r <= |den*S(m)| whenever S(m) != 0, which bounds the
// middle coefficients.
inline void edge_factor_scan(const LaurentPolynomial& f, const IntVec& w,
                             const IntVec& start, const IntVec& dir,
                             const Int& d, const Int& r,
                             std::vector<MutationData>& out) {
  unsigned dd = to_power(d);
  std::vector<Rat> s(dd + 1, Rat(0));
  for (unsigned k = 0; k <= dd; ++k) {
    IntVec p = start;
    for (unsigned t = 0; t < k; ++t) p = vec_add(p, dir);
    s[k] = f.coefficient(p).constant();
  }
  Int den = 1;
  for (const Rat& v : s) den = den / gcd(den, denominator(v)) * denominator(v);
  std::vector<Int> si(dd + 1);
  for (unsigned k = 0; k <= dd; ++k) si[k] = numerator(Rat(s[k] * den));

  // smallest positive evaluation point that misses every root
  Int m = 0, sm = 0;
  for (Int cand = 1; cand <= Int(dd) + 1; ++cand) {
    Int v = 0, pw = 1;
    for (unsigned k = 0; k <= dd; ++k) {
      v += si[k] * pw;
      pw *= cand;
    }
    if (v != 0) {
      m = cand;
      sm = v < 0 ? -v : v;
      break;
    }
  }
  if (m == 0)
    throw domain_error("internal-error", "edge slice vanished");

  unsigned kmax = to_power(d / r);
  for (unsigned k = 1; k <= kmax; ++k) {
    Int cap = sm - 1 - ipow(m, k);
    if (cap < 0) continue;
    std::vector<Int> c(k + 1, 0);
    c[0] = 1;
    c[k] = 1;
    auto emit = [&]() {
      if (den == 1) {
        Int am = 0, pw = 1;
        for (unsigned j = 0; j <= k; ++j) {
          am += c[j] * pw;
          pw *= m;
        }
        if (sm % am != 0) return;
      }
      LaurentPolynomial a(f.dim());
      IntVec e(f.dim(), 0);
      for (unsigned j = 0; j <= k; ++j) {
        if (c[j] != 0) a.set_coefficient(e, AffineForm(Rat(c[j])));
        e = vec_add(e, dir);
      }
      if (is_mutable(f, w, a)) out.push_back({w, a});
    };
    if (k == 1) {
      emit();
      continue;
    }
    // depth-first over the middle coefficients, weighted by powers of m
    std::vector<Int> weight(k);
    for (unsigned j = 1; j < k; ++j) weight[j] = ipow(m, j);
    auto rec = [&](auto&& self, unsigned j, Int left) -> void {
      if (j == k) {
        emit();
        return;
      }
      for (Int v = 0; v * weight[j] <= left; ++v) {
        c[j] = v;
        self(self, j + 1, left - v * weight[j]);
      }
      c[j] = 0;
    };
    rec(rec, 1, cap);
  }
}

inline void candidates_2d(const LaurentPolynomial& f, const LatticePolytope& p,
                          std::vector<MutationData>& out) {
  for (const Facet& fc : p.facets()) {
    if (fc.offset < 1) continue;  // vacuous or positive-height directions
    const IntVec& v1 = p.vertices()[fc.vertices[0]];
    const IntVec& v2 = p.vertices()[fc.vertices[1]];
    IntVec dv = vec_sub(v2, v1);
    Int d = content(dv);
    edge_factor_scan(f, fc.normal, v1, primitive(dv), d, fc.offset, out);
  }
}

// budget-bounded scan: weights in a box, factors built from bottom-slice
// displacements as binomial segment powers and unit-height triangles
inline void candidates_3d(const LaurentPolynomial& f,
                          const MutationSearchBudget& budget,
                          std::vector<MutationData>& out) {
  int W = budget.max_weight_entry;
  std::vector<IntVec> supp = f.support();
  IntVec w(3);
  for (int wx = -W; wx <= W; ++wx)
    for (int wy = -W; wy <= W; ++wy)
      for (int wz = -W; wz <= W; ++wz) {
        w[0] = wx;
        w[1] = wy;
        w[2] = wz;
        if (is_zero(w) || content(w) != 1) continue;
        Int hmin = 0;
        for (const IntVec& e : supp) hmin = std::min(hmin, dot(w, e));
        if (hmin >= 0) continue;
        std::vector<IntVec> bottom;
        for (const IntVec& e : supp)
          if (dot(w, e) == hmin) bottom.push_back(e);
        if (bottom.size() < 2) continue;
        std::set<IntVec> diffs;
        for (size_t i = 0; i < bottom.size(); ++i)
          for (size_t j = 0; j < bottom.size(); ++j) {
            if (i == j) continue;
            diffs.insert(vec_sub(bottom[j], bottom[i]));
          }
        for (const IntVec& u : diffs) {
          for (int L = 1; L <= budget.max_factor_power; ++L) {
            if (L + 1 > budget.max_factor_support) break;
            LaurentPolynomial seg =
                LaurentPolynomial::monomial(IntVec(3, 0), AffineForm(1)) +
                LaurentPolynomial::monomial(u, AffineForm(1));
            LaurentPolynomial a = seg.power(static_cast<unsigned>(L));
            if (is_mutable(f, w, a)) out.push_back({w, a});
          }
          for (const IntVec& v : diffs) {
            IntVec x = cross3(u, v);
            if (!(x == w || x == vec_neg(w))) continue;  // wall-unimodular
            for (int n = 1; n <= budget.max_factor_power; ++n) {
              if (n + 2 > budget.max_factor_support) break;
              LaurentPolynomial seg =
                  LaurentPolynomial::monomial(IntVec(3, 0), AffineForm(1)) +
                  LaurentPolynomial::monomial(u, AffineForm(1));
              LaurentPolynomial a = seg.power(static_cast<unsigned>(n)) +
                                    LaurentPolynomial::monomial(v, AffineForm(1));
              if (is_mutable(f, w, a)) out.push_back({w, a});
            }
          }
        }
      }
}

}  // namespace detail

// all data (w, a) with deg a > 0 keeping f mutable, one per dedup key.
// Complete in two dimensions; budget-bounded in three.
inline std::vector<MutationData> candidate_mutations(
    const LaurentPolynomial& f, const MutationSearchBudget& budget = {}) {
  detail::check_budget(budget);
  if (f.is_zero())
    throw domain_error("zero-polynomial", "no mutation data for 0");
  for (const auto& [e, c] : f.terms())
    if (!c.is_constant())
      throw domain_error("parametric-input",
                         "candidate scan needs constant coefficients");
  if (f.term_count() == 1) return {};
  if (!f.is_normalised())
    throw domain_error("not-normalised", "vertex coefficients must be 1");
  if (f.dim() == 1) return {};  // the wall is trivial
  LatticePolytope p = f.newton_polytope();
  if (!p.full_dim())
    throw domain_error("degenerate-support",
                       "candidate scan needs a full-dimensional Newton polytope");
  std::vector<MutationData> raw;
  if (f.dim() == 2)
    detail::candidates_2d(f, p, raw);
  else if (f.dim() == 3)
    detail::candidates_3d(f, budget, raw);
  else
    throw domain_error("unsupported-dimension",
                       "candidate scan handles dimensions 1 to 3");
  std::map<std::string, MutationData> dedup;
  for (auto& md : raw)
    dedup.emplace(canonical_mutation_key(md.w, md.factor), std::move(md));
  std::vector<MutationData> out;
  out.reserve(dedup.size());
  for (auto& [k, md] : dedup) out.push_back(std::move(md));
  return out;
}

enum class RigidityVerdict { rigid, not_rigid, inconclusive };

struct RigidityReport {
  RigidityVerdict verdict = RigidityVerdict::inconclusive;
  std::optional<LaurentPolynomial> witness;  // a second member, when flexible
  CoefficientSpace space;
  std::vector<MutationData> mutations;  // the data that cut the space
};

// decides whether the mutability constraints pin f down uniquely. A pinned
// space certifies rigidity in any dimension; leftover freedom disproves it
// only where the candidate scan is complete, and stays inconclusive in 3d.
inline RigidityReport certify_rigid(
    const LaurentPolynomial& f,
    const std::optional<std::vector<MutationData>>& supplied = std::nullopt,
    const MutationSearchBudget& budget = {}) {
  detail::check_budget(budget);
  for (const auto& [e, c] : f.terms())
    if (!c.is_constant())
      throw domain_error("parametric-input",
                         "rigidity of a parametric polynomial");
  if (f.is_zero() || !f.is_normalised())
    throw domain_error("not-normalised", "vertex coefficients must be 1");
  if (!f.has_zero_constant_term())
    throw domain_error("nonzero-constant-term",
                       "rigidity is decided at constant term 0");
  LatticePolytope p = f.newton_polytope();
  if (!p.is_fano())
    throw domain_error("not-fano", "Newton polytope must be Fano");

  RigidityReport rep;
  if (supplied) {
    for (const MutationData& md : *supplied)
      if (!is_mutable(f, md.w, md.factor))
        throw domain_error("not-mutable",
                           "supplied datum " +
                               canonical_mutation_key(md.w, md.factor));
    rep.mutations = *supplied;
  } else {
    rep.mutations = candidate_mutations(f, budget);
  }
  rep.space = coefficient_space(p, rep.mutations);
  auto settled = [&rep, &f]() {
    if (rep.space.empty || !space_contains(rep.space, f))
      throw domain_error("internal-error",
                         "input escaped its own coefficient space");
    if (!rep.space.parameters.empty()) return false;
    rep.verdict = RigidityVerdict::rigid;
    return true;
  };
  if (settled()) return rep;
  if (p.ambient_dim() <= 2) {
    if (supplied) {
      // widen a user set to the complete scan before concluding flexibility
      std::map<std::string, MutationData> all;
      for (auto& md : rep.mutations)
        all.emplace(canonical_mutation_key(md.w, md.factor), md);
      for (auto& md : candidate_mutations(f, budget))
        all.emplace(canonical_mutation_key(md.w, md.factor), std::move(md));
      rep.mutations.clear();
      for (auto& [k, md] : all) rep.mutations.push_back(std::move(md));
      rep.space = coefficient_space(p, rep.mutations);
      if (settled()) return rep;
    }
    // bump the first free coefficient to exhibit a second member
    std::map<std::string, Rat> vals;
    for (const auto& [name, q] : rep.space.parameters)
      vals[name] = f.coefficient(q).constant();
    vals[rep.space.parameters.front().first] += 1;
    rep.witness = rep.space.base.specialize(vals);
    rep.verdict = RigidityVerdict::not_rigid;
  } else {
    rep.verdict = RigidityVerdict::inconclusive;
  }
  return rep;
}

}  // namespace fanomut
