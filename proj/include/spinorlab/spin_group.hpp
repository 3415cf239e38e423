#pragma once

#include "spinorlab/clifford.hpp"

#include <stdexcept>
#include <vector>

namespace spinorlab {

struct NotInvertible : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An element v_1...v_{2k} of Spin_n kept as its factor list, so the inverse is
// the exact product (-v_{2k})...(-v_1).
template <class S>
class SpinElement {
 public:
  // Unit-norm check is exact for Gaussian rationals and uses `tol` otherwise.
  SpinElement(int dim, std::vector<Vector<S>> factors, double tol = 1e-10) : dim_(dim), factors_(std::move(factors)) {
    require_valid_dim(dim);
    if (factors_.empty() || factors_.size() % 2 != 0)
      throw NotInvertible("SpinElement: needs a positive even number of unit vectors");
    for (const auto& v : factors_) {
      require_same_dim(v.dim(), dim_);
      S norm = v.can(v);
      bool unit;
      if constexpr (is_exact_v<S>) {
        unit = norm == S(1);
      } else {
        unit = std::abs(norm - S(1)) <= tol;
      }
      if (!unit) throw NotInvertible("SpinElement: factor is not a unit vector");
    }
  }

  int dim() const { return dim_; }
  const std::vector<Vector<S>>& factors() const { return factors_; }

  CliffordElement<S> element() const {
    auto acc = CliffordElement<S>::scalar(dim_, S(1));
    for (const auto& v : factors_) acc = acc * v.to_clifford();
    return acc;
  }

  CliffordElement<S> inverse_element() const {
    auto acc = CliffordElement<S>::scalar(dim_, S(1));
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) acc = acc * (-*it).to_clifford();
    return acc;
  }

  SpinElement inverse() const {
    std::vector<Vector<S>> f;
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) f.push_back(-*it);
    return SpinElement(dim_, std::move(f));
  }

  SpinElement negated() const {
    auto f = factors_;
    f.front() = -f.front();
    return SpinElement(dim_, std::move(f));
  }

  friend SpinElement operator*(const SpinElement& a, const SpinElement& b) {
    require_same_dim(a.dim_, b.dim_);
    auto f = a.factors_;
    f.insert(f.end(), b.factors_.begin(), b.factors_.end());
    return SpinElement(a.dim_, std::move(f));
  }

  // Factors pushed into a larger space (e.g. R^n -> R^{2n}, first block).
  SpinElement embedded(int target_dim) const {
    std::vector<Vector<S>> f;
    for (const auto& v : factors_) f.push_back(embed(v, target_dim));
    return SpinElement(target_dim, std::move(f));
  }

 private:
  int dim_;
  std::vector<Vector<S>> factors_;
};

// u x u^{-1}
template <class S>
CliffordElement<S> ad_action(const SpinElement<S>& u, const CliffordElement<S>& x) {
  require_same_dim(u.dim(), x.dim());
  return u.element() * x * u.inverse_element();
}

// Matrix of Ad(u) on R^n: column j holds u e_j u^{-1}.
template <class S>
DenseMatrix<S> ad_matrix(const SpinElement<S>& u) {
  const int n = u.dim();
  const auto ue = u.element();
  const auto ui = u.inverse_element();
  DenseMatrix<S> r(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    auto img = ue * CliffordElement<S>::generator(n, j) * ui;
    for (const auto& [m, c] : img.terms()) {
      if (std::popcount(m) != 1) {
        if constexpr (is_exact_v<S>) throw std::logic_error("ad_matrix: Ad(u) left the vector subspace");
        continue;
      }
      r(static_cast<std::size_t>(std::countr_zero(m)), static_cast<std::size_t>(j)) = c;
    }
  }
  return r;
}

}  // namespace spinorlab
