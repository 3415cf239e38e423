#pragma once

// Spinors of R^{2n} as the left ideal of Cl_{2n} spanned by z_I . omegabar,
// where z_j = p_+(e_j), zbar_j = p_-(e_j), p_{+-} = (Id -+ iJ)/2 and
// omegabar = zbar_1 ... zbar_n. Everything here is exact.

#include "spinorlab/clifford.hpp"
#include "spinorlab/dense_matrix.hpp"
#include "spinorlab/spin_group.hpp"
#include "spinorlab/spin_rep.hpp"

#include <Eigen/Dense>

#include <memory>
#include <stdexcept>
#include <vector>

namespace spinorlab {

using QElement = CliffordElement<GaussianRational>;
using QForm = ExteriorElement<GaussianRational>;
using QVector = Vector<GaussianRational>;

struct NotInIdeal : std::logic_error {
  using std::logic_error::logic_error;
};

// J on R^{2n} = R^n + J(R^n): e_j -> e_{n+j}, e_{n+j} -> -e_j.
ExactMatrix complex_structure(int n);
QVector apply_j(const QVector& v);
QVector p_plus(const QVector& v);
QVector p_minus(const QVector& v);

struct WittFrame {
  int n = 0;
  ExactMatrix frame;  // columns: positively oriented orthonormal basis of R^n
  std::vector<QElement> z;
  std::vector<QElement> zbar;
  QElement omega_bar;

  // z_I . omegabar for I given as a bitmask over n indices.
  QElement ideal_element(BladeMask subset) const;
};

// Throws std::invalid_argument unless `frame` is orthogonal with determinant +1.
WittFrame build_witt_frame(int n, const ExactMatrix& frame);
WittFrame build_witt_frame(int n);

// Coefficients over the canonical basis z_I . omegabar, indexed by the mask of I.
struct IdealSpinor {
  int n = 0;
  std::vector<GaussianRational> coeffs;

  IdealSpinor() = default;
  explicit IdealSpinor(int n_) : n(n_), coeffs(std::size_t{1} << n_, GaussianRational(0)) {}

  static IdealSpinor basis(int n, BladeMask subset) {
    IdealSpinor s(n);
    s.coeffs.at(subset) = GaussianRational(1);
    return s;
  }

  std::size_t size() const { return coeffs.size(); }
  IdealSpinor grade_part(int p) const;
  std::optional<int> homogeneous_grade() const;
  Eigen::VectorXcd to_eigen() const;
  friend bool operator==(const IdealSpinor&, const IdealSpinor&) = default;
};

IdealSpinor operator+(IdealSpinor a, const IdealSpinor& b);
IdealSpinor operator*(const GaussianRational& c, IdealSpinor a);
IdealSpinor apply(const ExactMatrix& m, const IdealSpinor& s);

// Omegatilde(X, Y) = can(JX, Y) through the Clifford/exterior identification.
QElement kahler_form(int n);
// -2i sum_j z_j ^ zbar_j in the exterior algebra of R^{2n} (x) C.
QForm kahler_form_witt(const WittFrame& wf);

// Jtilde(v_1 ... v_2k) = J(v_1) ... J(v_2k) inside Spin(2n).
SpinElement<GaussianRational> jtilde(const SpinElement<GaussianRational>& u);
// u -> u . Jtilde(u), the diagonal immersion Spin_n -> Spin_2n.
SpinElement<GaussianRational> diagonal_immersion(const SpinElement<GaussianRational>& u);

// Canonical-frame model for one n, built once and cached (thread-safe).
class WittModel {
 public:
  static const WittModel& get(int n);
  explicit WittModel(int n);

  int n() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  const WittFrame& frame() const { return frame_; }
  const QElement& basis_element(BladeMask subset) const { return basis_.at(subset); }

  // Coordinates of an element of the ideal; throws NotInIdeal otherwise.
  IdealSpinor decompose(const QElement& x) const;
  QElement to_clifford(const IdealSpinor& s) const;

  // Matrix of left multiplication by e_k, k in [0, 2n).
  const ExactMatrix& generator_matrix(int k) const { return generators_.at(static_cast<std::size_t>(k)); }
  ExactMatrix left_matrix(const QElement& psi) const;
  ExactMatrix left_matrix(const QVector& v) const;
  // Blade-level route: multiply in Cl_{2n} and project back.
  IdealSpinor left_mult(const QElement& psi, const IdealSpinor& s) const;
  // Left multiplication by a vector of R^{2n} (x) C using the sparse
  // generator columns.
  IdealSpinor apply_vector(const QVector& v, const IdealSpinor& s) const;
  // Factor by factor, never expanding the product in Cl_{2n}.
  IdealSpinor apply_spin(const SpinElement<GaussianRational>& g, const IdealSpinor& s) const;

  ExactMatrix kahler_matrix() const;
  GaussianRational hermitian(const IdealSpinor& s, const IdealSpinor& t) const;
  // 2^{[(n+1)/2]}
  Rational hermitian_scale() const;

  IdealSpinor iso6(const QElement& a) const;
  QElement iso6_inverse(const IdealSpinor& s) const;
  // Blade coordinates to Witt coordinates and back, in floating point.
  const Eigen::MatrixXcd& iso6_numeric() const { return iso6_fwd_numeric_; }
  const Eigen::MatrixXcd& iso6_inverse_numeric() const { return iso6_inv_numeric_; }
  QForm iso9(const IdealSpinor& s) const;
  IdealSpinor iso9_inverse(const QForm& f) const;

  // sum_j p_+(e_j) p_-(e_j) (plus) or sum_j p_-(e_j) p_+(e_j).
  ExactMatrix witt_pair_sum(bool plus) const;

 private:
  int n_;
  WittFrame frame_;
  std::vector<QElement> basis_;
  std::vector<BladeMask> pivots_;
  std::vector<GaussianRational> pivot_coeffs_;
  std::vector<ExactMatrix> generators_;
  // generator k, column s -> nonzero (row, value) pairs
  std::vector<std::vector<std::vector<std::pair<std::size_t, GaussianRational>>>> sparse_generators_;
  ExactMatrix iso6_inv_;
  Eigen::MatrixXcd iso6_fwd_numeric_;
  Eigen::MatrixXcd iso6_inv_numeric_;
};

// The Killing-equation operator: -sum_j p_+(e_j) p_-(e_j) acts on the
// phi-component (plus) and -sum_j p_-(e_j) p_+(e_j) on the psi-component, so
// that Dhat psi = alpha K_+ phi and Dhat phi = alpha K_- psi.
ExactMatrix killing_operator(const WittModel& model, bool plus);
IdealSpinor killing_contraction(const WittModel& model, const IdealSpinor& s, bool plus);
// Grade of L^p on which K_{+-} equals (n+1)/2: (n+1)/2 for plus, (n-1)/2 otherwise.
int killing_grade(int n, bool plus);

// Sigma_2n -> Sigma_n (x) Sigma_n (doubled for n odd) via Cl_n.
TensorSpinor iso8(const SpinorRep& rep, const RealStructure& j, const WittModel& model, const Eigen::VectorXcd& s);
Eigen::VectorXcd iso8_inverse(const SpinorRep& rep, const RealStructure& j, const WittModel& model, const TensorSpinor& t);

}  // namespace spinorlab
