#pragma once

// Operators on the flat Lagrangians S^1 in C (unit circle, arclength t) and
// T^n = R^n / Z^n in C^n, truncated to Fourier modes. Fibres are forms on
// R^n; spinors of the ambient space are carried there by the Witt model.
// Every operator is block diagonal in the mode.

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinorlab {

using Complex = std::complex<double>;

struct ModeBlock {
  std::vector<double> frequency;  // k in Z^n, or mu in Z + 1/2 on the circle
  Eigen::MatrixXcd matrix;
};

struct ModeOperator {
  std::string name;
  std::string model;  // "circle" or "torus"
  int n = 0;
  int cutoff = 0;
  bool hermitian = false;
  std::vector<ModeBlock> blocks;

  std::size_t dimension() const;
  ModeOperator squared() const;
  // Block-diagonal dense form, blocks in stored order.
  Eigen::MatrixXcd dense() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
};

// Largest entrywise difference between matching blocks; throws if the mode
// sets differ.
double block_distance(const ModeOperator& a, const ModeOperator& b);
bool blocks_identical(const ModeOperator& a, const ModeOperator& b);
// max over blocks of ||A - A^*||
double self_adjointness_defect(const ModeOperator& op);

struct EigenLine {
  Complex value;
  int multiplicity = 0;
};

struct SpectrumReport {
  std::string model;
  std::string operator_name;
  int n = 0;
  int cutoff = 0;
  std::optional<std::string> structure;
  double tolerance = 1e-8;
  bool hermitian = true;
  std::vector<EigenLine> eigenvalues;  // sorted by real part, then imaginary part
  std::vector<std::pair<std::string, double>> residuals;

  int multiplicity_of(double value) const;
  int kernel_dimension() const { return multiplicity_of(0.0); }
};

SpectrumReport spectrum(const ModeOperator& op, double tol = 1e-8);
// All eigenvalues of a Hermitian operator, ascending.
std::vector<double> sorted_eigenvalues(const ModeOperator& op);

// Normal-vector coefficients on J e_1, ..., J e_n; constant along the model.
struct MeanCurvatureData {
  std::vector<double> normal;

  double norm2() const;
  static MeanCurvatureData zero(int n) { return {std::vector<double>(static_cast<std::size_t>(n), 0.0)}; }
  // Unit circle: H is the inward normal J(tangent), |H| = 1.
  static MeanCurvatureData unit_circle() { return {{1.0}}; }
};

// Fibre matrices on forms of R^n (blade-mask basis) obtained from left
// Clifford multiplication in the Witt model through the form isomorphism.
struct FibreActions {
  int n = 0;
  std::vector<Eigen::MatrixXcd> tangent;  // e_j
  std::vector<Eigen::MatrixXcd> normal;   // J e_j
  std::vector<Eigen::MatrixXcd> euler;    // e_j ^ - e_j _|
  bool tangent_matches_euler = false;     // exact comparison before rounding
};
const FibreActions& fibre_actions(int n);

std::vector<std::vector<int>> torus_modes(int n, int cutoff);

ModeOperator euler_operator_torus(int n, int cutoff);
ModeOperator twisted_dirac_torus(int n, int cutoff);
ModeOperator dirac_witten(const ModeOperator& dirac, const MeanCurvatureData& h);

enum class CircleSpinStructure { Trivial, Nontrivial };
std::string to_string(CircleSpinStructure s);
CircleSpinStructure parse_circle_structure(const std::string& s);

// Sign picked up by spinor coordinates in the adapted frame (tangent, J
// tangent) after one turn, computed from the rotor exp(t e_1 e_2 / 2).
int circle_frame_holonomy();

ModeOperator fundamental_dirac_circle(CircleSpinStructure s, int cutoff);

struct CircleOperators {
  CircleSpinStructure tangent;
  CircleSpinStructure normal;
  int total_holonomy = 0;
  ModeOperator twisted_dirac;
  ModeOperator dirac_witten;
  ModeOperator euler;
};
CircleOperators circle_operators(CircleSpinStructure tangent, int cutoff);

struct SquareIdentityReport {
  double shift = 0.0;  // n^2 |H|^2 / 4
  double max_residual = 0.0;
  std::size_t modes = 0;
};
// Per mode: D^2 - Dhat^2 - shift Id.
SquareIdentityReport verify_square_identity(const ModeOperator& dirac, const ModeOperator& dirac_witten,
                                            const MeanCurvatureData& h);

struct DegenerateTrialSpan : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MinMaxResult {
  int span_dimension = 0;
  double bound = 0.0;     // max Rayleigh quotient over the span
  double lambda_n = 0.0;  // N-th smallest eigenvalue, N = span dimension
  bool sound(double tol) const { return bound >= lambda_n - tol; }
};
MinMaxResult rayleigh_minmax(const ModeOperator& op, const std::vector<Eigen::VectorXcd>& trial);

// Spinor fields on the torus: one vector of Witt coordinates per mode, in
// torus_modes order.
using SpinorField = std::vector<Eigen::VectorXcd>;

struct KillingResidual {
  SpinorField psi_equation;  // nabla_Z psi + alpha p_-(Z) phi
  SpinorField phi_equation;  // nabla_Z phi + alpha p_+(Z) psi
  double norm() const;
};
KillingResidual killing_residual(int n, int cutoff, const SpinorField& psi, const SpinorField& phi, Complex alpha,
                                 const std::vector<double>& direction);
// Dimension of the space of mode-truncated pairs solving both equations for
// every direction.
int killing_solution_dimension(int n, int cutoff, Complex alpha);

}  // namespace spinorlab
