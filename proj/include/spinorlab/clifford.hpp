#pragma once

// Sparse multivectors over R^N (N <= 12) with complex coefficients: the
// Clifford algebra with v.v = -|v|^2, the exterior algebra, and the canonical
// linear identification between the two.

#include "spinorlab/blade.hpp"
#include "spinorlab/dense_matrix.hpp"
#include "spinorlab/scalar.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace spinorlab {

struct CliffordTag {};
struct ExteriorTag {};

template <class S, class Tag>
class Multivector {
 public:
  using Scalar = S;
  using Terms = std::map<BladeMask, S>;

  Multivector() = default;
  explicit Multivector(int dim) : dim_(dim) { require_valid_dim(dim); }

  static Multivector scalar(int dim, const S& c) { return blade(dim, 0, c); }
  static Multivector blade(int dim, BladeMask mask, const S& c = S(1)) {
    Multivector m(dim);
    m.add_term(mask, c);
    return m;
  }
  // e_j, zero-based.
  static Multivector generator(int dim, int j) {
    if (j < 0 || j >= dim) throw std::out_of_range("generator index out of range");
    return blade(dim, BladeMask{1} << j);
  }

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coefficient(BladeMask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(BladeMask mask, const S& c) {
    if (mask >> dim_) throw std::out_of_range("blade uses generators beyond the algebra dimension");
    if (spinorlab::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(mask, c);
    if (!inserted) {
      it->second += c;
      if (spinorlab::is_zero(it->second)) terms_.erase(it);
    }
  }

  Multivector grade_part(int p) const {
    Multivector out(dim_);
    for (const auto& [m, c] : terms_)
      if (std::popcount(m) == p) out.terms_.emplace(m, c);
    return out;
  }

  // Grade of a homogeneous element; nullopt for mixed grades or zero.
  std::optional<int> homogeneous_grade(double tol = 0.0) const {
    std::optional<int> g;
    for (const auto& [m, c] : terms_) {
      if (magnitude(c) <= tol) continue;
      int gm = std::popcount(m);
      if (g && *g != gm) return std::nullopt;
      g = gm;
    }
    return g;
  }

  // Reversal e_{i1}...e_{ip} -> e_{ip}...e_{i1}.
  Multivector reverse() const {
    Multivector out(dim_);
    for (const auto& [m, c] : terms_) {
      int p = std::popcount(m);
      out.terms_.emplace(m, ((p * (p - 1) / 2) & 1) ? -c : c);
    }
    return out;
  }

  Multivector conjugate_coefficients() const {
    Multivector out(dim_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, conj(c));
    return out;
  }

  Multivector& operator+=(const Multivector& o) {
    require_same_dim(dim_, o.dim_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    require_same_dim(dim_, o.dim_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Multivector& operator*=(const S& c) {
    if (spinorlab::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, x] : terms_) x *= c;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) { return a *= S(-1); }
  friend Multivector operator*(Multivector a, const S& c) { return a *= c; }
  friend Multivector operator*(const S& c, Multivector a) { return a *= c; }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  // Largest coefficient magnitude of a - b.
  friend double max_abs_diff(const Multivector& a, const Multivector& b) {
    require_same_dim(a.dim_, b.dim_);
    double worst = 0.0;
    auto d = a - b;
    for (const auto& [m, c] : d.terms_) worst = std::max(worst, magnitude(c));
    return worst;
  }

  // Same coefficients, other dimension tag (used for embeddings and the
  // Clifford/exterior identification).
  template <class OtherTag>
  Multivector<S, OtherTag> relabel(int new_dim) const {
    Multivector<S, OtherTag> out(new_dim);
    for (const auto& [m, c] : terms_) out.add_term(m, c);
    return out;
  }

 private:
  int dim_ = 0;
  Terms terms_;
};

template <class S>
using CliffordElement = Multivector<S, CliffordTag>;
template <class S>
using ExteriorElement = Multivector<S, ExteriorTag>;

// Geometric product, v.w + w.v = -2 can(v,w).
template <class S>
CliffordElement<S> operator*(const CliffordElement<S>& a, const CliffordElement<S>& b) {
  require_same_dim(a.dim(), b.dim());
  CliffordElement<S> out(a.dim());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      S c = ca * cb;
      if (clifford_sign(ma, mb) < 0) c = -c;
      out.add_term(ma ^ mb, c);
    }
  }
  return out;
}

template <class S>
CliffordElement<S> clifford_mul(const CliffordElement<S>& a, const CliffordElement<S>& b) {
  return a * b;
}

template <class S>
ExteriorElement<S> wedge(const ExteriorElement<S>& a, const ExteriorElement<S>& b) {
  require_same_dim(a.dim(), b.dim());
  ExteriorElement<S> out(a.dim());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      S c = ca * cb;
      if (s < 0) c = -c;
      out.add_term(ma | mb, c);
    }
  }
  return out;
}

// Coordinates w.r.t. the canonical orthonormal basis. Complex coordinates are
// allowed so that Witt vectors p_{+-}(e_j) fit the same type.
template <class S>
struct Vector {
  std::vector<S> coords;

  Vector() = default;
  explicit Vector(int dim) : coords(static_cast<std::size_t>(dim), S(0)) {}
  explicit Vector(std::vector<S> c) : coords(std::move(c)) {}

  static Vector basis(int dim, int j) {
    Vector v(dim);
    v.coords.at(static_cast<std::size_t>(j)) = S(1);
    return v;
  }

  int dim() const { return static_cast<int>(coords.size()); }
  const S& operator[](int j) const { return coords[static_cast<std::size_t>(j)]; }
  S& operator[](int j) { return coords[static_cast<std::size_t>(j)]; }

  // Bilinear (not sesquilinear) extension of can.
  S can(const Vector& o) const {
    require_same_dim(dim(), o.dim());
    S acc(0);
    for (int j = 0; j < dim(); ++j) acc += coords[j] * o.coords[j];
    return acc;
  }

  template <class Tag = CliffordTag>
  Multivector<S, Tag> to_multivector() const {
    Multivector<S, Tag> out(dim());
    for (int j = 0; j < dim(); ++j) out.add_term(BladeMask{1} << j, coords[j]);
    return out;
  }
  CliffordElement<S> to_clifford() const { return to_multivector<CliffordTag>(); }
  ExteriorElement<S> to_exterior() const { return to_multivector<ExteriorTag>(); }

  friend Vector operator+(Vector a, const Vector& b) {
    require_same_dim(a.dim(), b.dim());
    for (int j = 0; j < a.dim(); ++j) a[j] += b[j];
    return a;
  }
  friend Vector operator*(const S& c, Vector a) {
    for (auto& x : a.coords) x *= c;
    return a;
  }
  friend Vector operator-(Vector a) { return S(-1) * std::move(a); }
  friend bool operator==(const Vector&, const Vector&) = default;
};

// Interior product v^flat _| a, an antiderivation of degree -1.
template <class S>
ExteriorElement<S> contract(const Vector<S>& v, const ExteriorElement<S>& a) {
  require_same_dim(v.dim(), a.dim());
  ExteriorElement<S> out(a.dim());
  for (const auto& [m, c] : a.terms()) {
    for (int j = 0; j < v.dim(); ++j) {
      const BladeMask bit = BladeMask{1} << j;
      if (!(m & bit) || is_zero(v[j])) continue;
      const int before = std::popcount(m & (bit - 1));
      S t = v[j] * c;
      if (before & 1) t = -t;
      out.add_term(m ^ bit, t);
    }
  }
  return out;
}

template <class S>
ExteriorElement<S> wedge(const Vector<S>& v, const ExteriorElement<S>& a) {
  return wedge(v.to_exterior(), a);
}

// The canonical isomorphism Cl_n -> Lambda R^n (x) C. In an orthonormal basis
// e_{i1}...e_{ip} (distinct, increasing) maps to e_{i1}^...^e_{ip}.
template <class S>
ExteriorElement<S> chevalley_to_exterior(const CliffordElement<S>& a) {
  return a.template relabel<ExteriorTag>(a.dim());
}

template <class S>
CliffordElement<S> exterior_to_clifford(const ExteriorElement<S>& a) {
  return a.template relabel<CliffordTag>(a.dim());
}

// Cl_n -> Cl_m (m >= n), e_j -> e_j.
template <class S>
CliffordElement<S> embed(const CliffordElement<S>& a, int target_dim) {
  if (target_dim < a.dim()) throw std::invalid_argument("embed: target dimension smaller than source");
  return a.template relabel<CliffordTag>(target_dim);
}

template <class S>
CliffordElement<S> embed(const CliffordElement<S>& a) {
  return embed(a, 2 * a.dim());
}

template <class S>
Vector<S> embed(const Vector<S>& v, int target_dim) {
  Vector<S> out(target_dim);
  for (int j = 0; j < v.dim(); ++j) out[j] = v[j];
  return out;
}

// Image of a form under the natural action of a linear map on Lambda R^n.
template <class S>
ExteriorElement<S> exterior_power_action(const DenseMatrix<S>& r, const ExteriorElement<S>& a) {
  const int n = a.dim();
  if (static_cast<int>(r.rows()) != n || static_cast<int>(r.cols()) != n) throw DimensionMismatch(static_cast<int>(r.rows()), n);
  ExteriorElement<S> out(n);
  for (const auto& [m, c] : a.terms()) {
    auto acc = ExteriorElement<S>::scalar(n, c);
    for (int j = 0; j < n; ++j) {
      if (!(m & (BladeMask{1} << j))) continue;
      Vector<S> col(n);
      for (int i = 0; i < n; ++i) col[i] = r(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      acc = wedge(acc, col.to_exterior());
    }
    out += acc;
  }
  return out;
}

}  // namespace spinorlab
