#pragma once

#include "spinorlab/scalar.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace spinorlab {

// Small dense row-major matrix over an arbitrary scalar. Used where exact
// arithmetic is required; numerical code works with Eigen directly.
template <class S>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  DenseMatrix& operator*=(const S& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, const S& c) { return a *= c; }
  friend DenseMatrix operator*(const S& c, DenseMatrix a) { return a *= c; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("DenseMatrix: inner dimensions differ");
    DenseMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!is_zero(b(k, j))) out(i, j) += aik * b(k, j);
        }
      }
    }
    return out;
  }

  std::vector<S> apply(const std::vector<S>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("DenseMatrix: vector length differs");
    std::vector<S> y(rows_, S(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!is_zero((*this)(i, j)) && !is_zero(x[j])) y[i] += (*this)(i, j) * x[j];
      }
    }
    return y;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && !is_zero((*this)(i, j))) return false;
    return true;
  }

  // Gauss-Jordan inverse; pivots on the largest magnitude so the same code
  // serves the floating-point instantiation.
  DenseMatrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("DenseMatrix: inverse of non-square matrix");
    const std::size_t n = rows_;
    DenseMatrix a = *this;
    DenseMatrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = n;
      double best = 0.0;
      for (std::size_t r = col; r < n; ++r) {
        if (is_zero(a(r, col))) continue;
        double mag = magnitude(a(r, col));
        if (pivot == n || mag > best) {
          pivot = r;
          best = mag;
        }
      }
      if (pivot == n) throw std::domain_error("DenseMatrix: singular matrix");
      a.swap_rows(col, pivot);
      inv.swap_rows(col, pivot);
      S p = a(col, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(col, j) /= p;
        inv(col, j) /= p;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || is_zero(a(r, col))) continue;
        S f = a(r, col);
        for (std::size_t j = 0; j < n; ++j) {
          if (!is_zero(a(col, j))) a(r, j) -= f * a(col, j);
          if (!is_zero(inv(col, j))) inv(r, j) -= f * inv(col, j);
        }
      }
    }
    return inv;
  }

  Eigen::MatrixXcd to_eigen() const {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_complex((*this)(i, j));
    return m;
  }

 private:
  void require_same_shape(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("DenseMatrix: shape mismatch");
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

using ExactMatrix = DenseMatrix<GaussianRational>;

}  // namespace spinorlab
