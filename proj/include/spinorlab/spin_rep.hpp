#pragma once

// Matrix spin representations of Cl_n, the antilinear structure commuting with
// Spin_n, and the identification Cl_n = Sigma (x) Sigma (doubled for n odd).

#include "spinorlab/clifford.hpp"
#include "spinorlab/spin_group.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace spinorlab {

inline constexpr int kMaxRepDim = 12;
inline constexpr int kMaxRealStructureDim = 10;

// delta_n(e_j) = gammas[j]: unitary, skew-Hermitian, gamma_j gamma_k + gamma_k
// gamma_j = -2 delta_jk. For n odd the complex volume element maps to +Id
// (first summand of Cl_n = End + End).
struct SpinorRep {
  int n = 0;
  int d = 0;
  std::vector<Eigen::MatrixXcd> gammas;
  bool swapped = false;  // odd n: the recursion gave -Id and the other half was taken

  bool odd() const { return n % 2 == 1; }
  int copies() const { return odd() ? 2 : 1; }
};

SpinorRep build_rep(int n);

// delta_n(e_I) for an increasing monomial.
Eigen::MatrixXcd blade_matrix(const SpinorRep& rep, BladeMask mask);

// i^{[(n+1)/2]} e_1...e_n
CliffordElement<GaussianRational> complex_volume_element(int n);

template <class S>
Eigen::MatrixXcd delta(const SpinorRep& rep, const CliffordElement<S>& a) {
  require_same_dim(rep.n, a.dim());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rep.d, rep.d);
  for (const auto& [m, c] : a.terms()) out += to_complex(c) * blade_matrix(rep, m);
  return out;
}

template <class S>
Eigen::MatrixXcd delta(const SpinorRep& rep, const Vector<S>& v) {
  return delta(rep, v.to_clifford());
}

template <class S>
Eigen::MatrixXcd delta(const SpinorRep& rep, const SpinElement<S>& u) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(rep.d, rep.d);
  for (const auto& v : u.factors()) out = out * delta(rep, v);
  return out;
}

// Rank of the span of delta(e_I) over all blades; equals d^2 when delta is onto.
int delta_image_rank(const SpinorRep& rep);

// Standard coordinate product, complex-linear in the first argument.
Complex hermitian(const Eigen::VectorXcd& sigma, const Eigen::VectorXcd& sigma_prime);

enum class StructureKind { Real, Quaternionic, Mixed };
std::string to_string(StructureKind k);

// j(sigma) = C conj(sigma).
struct RealStructure {
  Eigen::MatrixXcd c;
  StructureKind kind = StructureKind::Mixed;
  // +1: j commutes with every delta(v), -1: anticommutes, 0: neither.
  int vector_sign = 0;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& sigma) const { return c * sigma.conjugate(); }
  Eigen::VectorXcd apply_inverse(const Eigen::VectorXcd& tau) const {
    return (c.inverse() * tau).conjugate();
  }
  Eigen::MatrixXcd square() const { return c * c.conjugate(); }
};

// Solves delta(g) C = C conj(delta(g)) for g ranging over unit vectors when the
// real Clifford algebra admits it, otherwise over the even generators e_1 e_j;
// the solution is made unitary by polar decomposition.
RealStructure build_j(const SpinorRep& rep);

// Row vector f with f(x) = <x, j(sigma)> = f * x.
Eigen::RowVectorXcd sigma_to_dual(const RealStructure& j, const Eigen::VectorXcd& sigma);

// Element of Sigma (x) Sigma stored as a d x d matrix (x (x) y -> x y^T); two
// blocks for n odd.
struct TensorSpinor {
  std::vector<Eigen::MatrixXcd> blocks;
};

Complex tensor_hermitian(const TensorSpinor& a, const TensorSpinor& b);
double tensor_distance(const TensorSpinor& a, const TensorSpinor& b);
TensorSpinor operator+(const TensorSpinor& a, const TensorSpinor& b);
TensorSpinor operator*(Complex c, const TensorSpinor& a);

// {A (x) Id (+) -A (x) Id} for the image of a vector; sign per block.
TensorSpinor tensor_left(const SpinorRep& rep, const Eigen::MatrixXcd& a, const TensorSpinor& t, bool alternate);
// {Id (x) B (+) -Id (x) B}
TensorSpinor tensor_right(const SpinorRep& rep, const Eigen::MatrixXcd& b, const TensorSpinor& t, bool alternate);

TensorSpinor clif_to_tensor(const SpinorRep& rep, const RealStructure& j, const CliffordElement<Complex>& a);
CliffordElement<Complex> tensor_to_clif(const SpinorRep& rep, const RealStructure& j, const TensorSpinor& t);

template <class S>
CliffordElement<Complex> to_complex_element(const CliffordElement<S>& a) {
  CliffordElement<Complex> out(a.dim());
  for (const auto& [m, c] : a.terms()) out.add_term(m, to_complex(c));
  return out;
}

template <class S>
SpinElement<Complex> to_complex_spin(const SpinElement<S>& u) {
  std::vector<Vector<Complex>> f;
  for (const auto& v : u.factors()) {
    Vector<Complex> w(v.dim());
    for (int k = 0; k < v.dim(); ++k) w[k] = to_complex(v[k]);
    f.push_back(w);
  }
  return SpinElement<Complex>(u.dim(), std::move(f));
}

}  // namespace spinorlab
