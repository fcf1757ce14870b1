#pragma once

// Laurent polynomials with exact coefficients. A coefficient is an affine
// form: rational constant plus a rational linear combination of named
// parameters. Products of two non-constant forms are a domain error: the
// library never leaves the affine-linear world.

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "fanomut/polytope.hpp"

namespace fanomut {

class AffineForm {
 public:
  AffineForm() = default;
  AffineForm(const Rat& c) : c_(c) {}
  AffineForm(const Int& c) : c_(Rat(c)) {}
  AffineForm(int c) : c_(Rat(c)) {}
  static AffineForm parameter(const std::string& name) {
    AffineForm f;
    f.lin_[name] = 1;
    return f;
  }

  bool is_constant() const { return lin_.empty(); }
  bool is_zero() const { return c_ == 0 && lin_.empty(); }
  const Rat& constant() const { return c_; }
  const std::map<std::string, Rat>& linear() const { return lin_; }
  Rat coeff(const std::string& name) const {
    auto it = lin_.find(name);
    return it == lin_.end() ? Rat(0) : it->second;
  }

  AffineForm& operator+=(const AffineForm& o) {
    c_ += o.c_;
    for (const auto& [k, v] : o.lin_) {
      Rat& r = lin_[k];
      r += v;
      if (r == 0) lin_.erase(k);
    }
    return *this;
  }
  AffineForm operator+(const AffineForm& o) const {
    AffineForm r = *this;
    r += o;
    return r;
  }
  AffineForm operator-() const {
    AffineForm r;
    r.c_ = -c_;
    for (const auto& [k, v] : lin_) r.lin_[k] = -v;
    return r;
  }
  AffineForm& operator-=(const AffineForm& o) { return *this += -o; }
  AffineForm operator-(const AffineForm& o) const {
    AffineForm r = *this;
    r -= o;
    return r;
  }
  AffineForm operator*(const AffineForm& o) const {
    if (!is_constant() && !o.is_constant())
      throw domain_error("nonlinear-parameter-product",
                         "product of two parameter-dependent coefficients");
    const AffineForm& form = is_constant() ? o : *this;
    const Rat& scalar = is_constant() ? c_ : o.c_;
    AffineForm r;
    r.c_ = form.c_ * scalar;
    if (scalar != 0)
      for (const auto& [k, v] : form.lin_) r.lin_[k] = v * scalar;
    return r;
  }
  AffineForm& operator*=(const AffineForm& o) { return *this = *this * o; }

  AffineForm operator/(const Rat& s) const {
    if (s == 0) throw domain_error("division-by-zero", "affine form / 0");
    AffineForm r;
    r.c_ = c_ / s;
    for (const auto& [k, v] : lin_) r.lin_[k] = v / s;
    return r;
  }

  bool operator==(const AffineForm& o) const {
    return c_ == o.c_ && lin_ == o.lin_;
  }
  bool operator!=(const AffineForm& o) const { return !(*this == o); }
  bool operator<(const AffineForm& o) const {
    if (c_ != o.c_) return c_ < o.c_;
    return std::lexicographical_compare(
        lin_.begin(), lin_.end(), o.lin_.begin(), o.lin_.end());
  }

  // Substitute parameters. Every parameter appearing here must be assigned.
  AffineForm substitute(const std::map<std::string, Rat>& values) const {
    AffineForm r;
    r.c_ = c_;
    for (const auto& [k, v] : lin_) {
      auto it = values.find(k);
      if (it == values.end())
        throw domain_error("missing-parameter", "no value for parameter " + k);
      r.c_ += v * it->second;
    }
    return r;
  }

  void collect_parameters(std::set<std::string>& out) const {
    for (const auto& [k, v] : lin_) out.insert(k);
  }

 private:
  Rat c_ = 0;
  std::map<std::string, Rat> lin_;  // nonzero entries only
};

class LaurentPolynomial {
 public:
  explicit LaurentPolynomial(size_t dim = 0) : dim_(dim) {}

  static LaurentPolynomial monomial(const IntVec& e, const AffineForm& c) {
    LaurentPolynomial f(e.size());
    if (!c.is_zero()) f.terms_[e] = c;
    return f;
  }
  static LaurentPolynomial constant(size_t dim, const AffineForm& c) {
    return monomial(IntVec(dim, 0), c);
  }

  size_t dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<IntVec, AffineForm>& terms() const { return terms_; }

  AffineForm coefficient(const IntVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? AffineForm() : it->second;
  }

  void set_coefficient(const IntVec& e, const AffineForm& c) {
    if (c.is_zero())
      terms_.erase(e);
    else
      terms_[e] = c;
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
    check_dim(o);
    for (const auto& [e, c] : o.terms_) {
      auto it = terms_.find(e);
      if (it == terms_.end()) {
        terms_[e] = c;
      } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
      }
    }
    return *this;
  }
  LaurentPolynomial operator+(const LaurentPolynomial& o) const {
    LaurentPolynomial r = *this;
    r += o;
    return r;
  }
  LaurentPolynomial operator-() const {
    LaurentPolynomial r(dim_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }
  LaurentPolynomial operator-(const LaurentPolynomial& o) const {
    return *this + (-o);
  }
  LaurentPolynomial operator*(const LaurentPolynomial& o) const {
    check_dim(o);
    LaurentPolynomial r(dim_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        IntVec e = vec_add(e1, e2);
        AffineForm prod = c1 * c2;
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
          if (!prod.is_zero()) r.terms_[e] = prod;
        } else {
          it->second += prod;
          if (it->second.is_zero()) r.terms_.erase(it);
        }
      }
    return r;
  }
  LaurentPolynomial scale(const AffineForm& c) const {
    LaurentPolynomial r(dim_);
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) {
      AffineForm p = v * c;
      if (!p.is_zero()) r.terms_[e] = p;
    }
    return r;
  }
  LaurentPolynomial mul_monomial(const IntVec& shift) const {
    LaurentPolynomial r(dim_);
    for (const auto& [e, v] : terms_) r.terms_[vec_add(e, shift)] = v;
    return r;
  }

  LaurentPolynomial power(unsigned k) const {
    LaurentPolynomial r = constant(dim_, AffineForm(1));
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  bool operator==(const LaurentPolynomial& o) const {
    return dim_ == o.dim_ && terms_ == o.terms_;
  }
  bool operator!=(const LaurentPolynomial& o) const { return !(*this == o); }
  bool operator<(const LaurentPolynomial& o) const {
    if (dim_ != o.dim_) return dim_ < o.dim_;
    return std::lexicographical_compare(terms_.begin(), terms_.end(),
                                        o.terms_.begin(), o.terms_.end());
  }

  std::vector<IntVec> support() const {
    std::vector<IntVec> s;
    s.reserve(terms_.size());
    for (const auto& [e, c] : terms_) s.push_back(e);
    return s;
  }

  LatticePolytope newton_polytope() const {
    if (terms_.empty())
      throw domain_error("zero-polynomial", "Newton polytope of 0");
    return LatticePolytope::hull(support(), dim_, false);
  }

  bool has_zero_constant_term() const {
    return coefficient(IntVec(dim_, 0)).is_zero();
  }

  // coefficient at every vertex of the Newton polytope equals 1
  bool is_normalised() const {
    if (terms_.empty()) return false;
    LatticePolytope np = newton_polytope();
    for (const IntVec& v : np.vertices()) {
      if (!(coefficient(v) == AffineForm(1))) return false;
    }
    return true;
  }

  bool has_nonnegative_integer_coefficients() const {
    for (const auto& [e, c] : terms_) {
      if (!c.is_constant()) return false;
      if (denominator(c.constant()) != 1) return false;
      if (c.constant() < 0) return false;
    }
    return true;
  }

  std::set<std::string> parameters() const {
    std::set<std::string> out;
    for (const auto& [e, c] : terms_) c.collect_parameters(out);
    return out;
  }

  LaurentPolynomial specialize(const std::map<std::string, Rat>& values) const {
    LaurentPolynomial r(dim_);
    for (const auto& [e, c] : terms_) {
      AffineForm s = c.substitute(values);
      if (!s.is_zero()) r.terms_[e] = s;
    }
    return r;
  }

  // exponent vectors map by e -> u * e; u must be unimodular
  LaurentPolynomial change_of_basis(const IntMat& u) const {
    if (!is_unimodular(u))
      throw domain_error("not-unimodular", "monomial substitution matrix");
    LaurentPolynomial r(dim_);
    for (const auto& [e, c] : terms_) r.terms_[mat_apply(u, e)] = c;
    return r;
  }

 private:
  void check_dim(const LaurentPolynomial& o) const {
    if (dim_ != o.dim_)
      throw domain_error("dimension-mismatch", "polynomials of different dims");
  }

  size_t dim_;
  std::map<IntVec, AffineForm> terms_;
};

enum class PeriodKind { classical, regularized };

struct PeriodSequence {
  PeriodKind kind = PeriodKind::classical;
  std::vector<Rat> coeffs;  // coeffs[k] for k = 0..order
};

namespace detail {

template <class C>
std::vector<C> period_loop_packed(
    const std::vector<std::pair<uint64_t, C>>& base, uint64_t target_step,
    unsigned order, size_t reserve_hint) {
  std::vector<C> out(order + 1);
  out[0] = C(1);
  std::unordered_map<uint64_t, C> g;
  g.reserve(reserve_hint);
  for (const auto& [k, c] : base) g[k] += c;
  uint64_t target = target_step;
  {
    auto it = g.find(target);
    out[1] = it == g.end() ? C(0) : it->second;
  }
  for (unsigned k = 2; k <= order; ++k) {
    std::unordered_map<uint64_t, C> next;
    next.reserve(g.size() * 2 + 16);
    for (const auto& [e1, c1] : g) {
      if (c1 == 0) continue;
      for (const auto& [e2, c2] : base) next[e1 + e2] += c1 * c2;
    }
    g.swap(next);
    target += target_step;
    auto it = g.find(target);
    out[k] = it == g.end() ? C(0) : it->second;
  }
  return out;
}

}  // namespace detail

// pi_f(t) = sum_k (constant term of f^k) t^k, computed through t^order by
// iterated sparse multiplication over the full support of f^k.
inline PeriodSequence classical_period(const LaurentPolynomial& f,
                                       unsigned order) {
  PeriodSequence seq;
  seq.kind = PeriodKind::classical;
  if (f.is_zero()) {
    seq.coeffs.assign(order + 1, Rat(0));
    seq.coeffs[0] = 1;
    return seq;
  }
  std::vector<Rat> coeffs;
  std::vector<IntVec> exps;
  bool all_int = true;
  for (const auto& [e, c] : f.terms()) {
    if (!c.is_constant())
      throw domain_error("parametric-period",
                         "classical_period needs constant coefficients");
    coeffs.push_back(c.constant());
    if (denominator(c.constant()) != 1) all_int = false;
    exps.push_back(e);
  }
  size_t dim = f.dim();
  // shift the support into the nonnegative orthant, then try to pack each
  // exponent vector into 21-bit fields of one uint64
  IntVec shift(dim, 0);
  for (const IntVec& e : exps)
    for (size_t i = 0; i < dim; ++i) shift[i] = std::min(shift[i], e[i]);
  Int max_field = 0;
  for (const IntVec& e : exps)
    for (size_t i = 0; i < dim; ++i)
      max_field = std::max(max_field, Int(e[i] - shift[i]));
  bool packable = dim <= 3 && max_field * Int(order == 0 ? 1 : order) <
                                  (Int(1) << 21);
  if (packable) {
    auto pack = [&](const IntVec& e) {
      uint64_t k = 0;
      for (size_t i = 0; i < dim; ++i)
        k |= static_cast<uint64_t>(Int(e[i] - shift[i]).convert_to<int64_t>())
             << (21 * i);
      return k;
    };
    uint64_t target_step = 0;
    {
      IntVec zero(dim, 0);
      target_step = pack(zero);
    }
    if (all_int) {
      std::vector<std::pair<uint64_t, Int>> base;
      for (size_t i = 0; i < exps.size(); ++i)
        base.push_back({pack(exps[i]), numerator(coeffs[i])});
      auto vals = detail::period_loop_packed<Int>(base, target_step, order,
                                                  exps.size() * 4);
      for (const Int& v : vals) seq.coeffs.push_back(Rat(v));
    } else {
      std::vector<std::pair<uint64_t, Rat>> base;
      for (size_t i = 0; i < exps.size(); ++i)
        base.push_back({pack(exps[i]), coeffs[i]});
      seq.coeffs = detail::period_loop_packed<Rat>(base, target_step, order,
                                                   exps.size() * 4);
    }
    return seq;
  }
  // generic path (huge exponents): exact but slower
  seq.coeffs.assign(order + 1, Rat(0));
  seq.coeffs[0] = 1;
  LaurentPolynomial g = f;
  IntVec zero(dim, 0);
  for (unsigned k = 1; k <= order; ++k) {
    if (k > 1) g = g * f;
    AffineForm c = g.coefficient(zero);
    seq.coeffs[k] = c.constant();
  }
  return seq;
}

// Relabels a classical period for comparison against regularized quantum
// series. The constant-term coefficients already carry the k! weighting,
// so only the kind changes.
inline PeriodSequence regularize(const PeriodSequence& s) {
  if (s.kind != PeriodKind::classical)
    throw domain_error("kind-mismatch", "regularize expects a classical period");
  PeriodSequence r;
  r.kind = PeriodKind::regularized;
  r.coeffs = s.coeffs;
  return r;
}

// equality through the smaller of the two recorded orders
inline bool periods_equal(const PeriodSequence& a, const PeriodSequence& b) {
  if (a.kind != b.kind)
    throw domain_error("kind-mismatch",
                       "comparing classical with regularized period");
  size_t n = std::min(a.coeffs.size(), b.coeffs.size());
  for (size_t i = 0; i < n; ++i)
    if (a.coeffs[i] != b.coeffs[i]) return false;
  return true;
}

}  // namespace fanomut
