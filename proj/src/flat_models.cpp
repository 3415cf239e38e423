#include "spinorlab/flat_models.hpp"

#include "spinorlab/witt_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>

namespace spinorlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::MatrixXcd to_numeric(const ExactMatrix& m) { return m.to_eigen(); }

ExactMatrix iso9_matrix(const WittModel& model) {
  ExactMatrix m(model.dim(), model.dim());
  for (BladeMask s = 0; s < model.dim(); ++s) {
    const QForm f = model.iso9(IdealSpinor::basis(model.n(), s));
    for (const auto& [blade, c] : f.terms()) m(blade, s) = c;
  }
  return m;
}

ExactMatrix form_operator(int n, const std::function<QForm(const QForm&)>& op) {
  const std::size_t d = std::size_t{1} << n;
  ExactMatrix m(d, d);
  for (BladeMask s = 0; s < d; ++s) {
    const QForm image = op(QForm::blade(n, s));
    for (const auto& [blade, c] : image.terms()) m(blade, s) = c;
  }
  return m;
}

FibreActions build_fibre_actions(int n) {
  const auto& model = WittModel::get(n);
  const ExactMatrix to_forms = iso9_matrix(model);
  const ExactMatrix from_forms = to_forms.inverse();
  FibreActions fa;
  fa.n = n;
  fa.tangent_matches_euler = true;
  for (int j = 0; j < n; ++j) {
    const QVector e = QVector::basis(2 * n, j);
    const QVector basis_n = QVector::basis(n, j);
    const ExactMatrix t = to_forms * model.left_matrix(e) * from_forms;
    const ExactMatrix nu = to_forms * model.left_matrix(apply_j(e)) * from_forms;
    const ExactMatrix eu = form_operator(n, [&](const QForm& f) { return wedge(basis_n, f) - contract(basis_n, f); });
    fa.tangent_matches_euler = fa.tangent_matches_euler && t == eu;
    fa.tangent.push_back(to_numeric(t));
    fa.normal.push_back(to_numeric(nu));
    fa.euler.push_back(to_numeric(eu));
  }
  return fa;
}

ModeOperator make_operator(std::string name, std::string model, int n, int cutoff, bool hermitian) {
  ModeOperator op;
  op.name = std::move(name);
  op.model = std::move(model);
  op.n = n;
  op.cutoff = cutoff;
  op.hermitian = hermitian;
  return op;
}

void require_cutoff(int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("cutoff must be at least 1");
}

ModeOperator torus_operator(std::string name, int n, int cutoff, const std::vector<Eigen::MatrixXcd>& directions) {
  require_cutoff(cutoff);
  ModeOperator op = make_operator(std::move(name), "torus", n, cutoff, true);
  const auto d = directions.front().rows();
  for (const auto& k : torus_modes(n, cutoff)) {
    ModeBlock b;
    b.matrix = Eigen::MatrixXcd::Zero(d, d);
    for (int j = 0; j < n; ++j) {
      b.frequency.push_back(k[j]);
      if (k[j] != 0) b.matrix += Complex(0.0, kTwoPi * k[j]) * directions[j];
    }
    op.blocks.push_back(std::move(b));
  }
  return op;
}

// Frequencies on the circle: Z or Z + 1/2, |mu| <= cutoff.
std::vector<double> circle_frequencies(bool antiperiodic, int cutoff) {
  std::vector<double> out;
  if (antiperiodic) {
    for (int k = -cutoff; k < cutoff; ++k) out.push_back(k + 0.5);
  } else {
    for (int k = -cutoff; k <= cutoff; ++k) out.push_back(k);
  }
  return out;
}

bool same_value(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(a)); }

}  // namespace

std::size_t ModeOperator::dimension() const {
  std::size_t d = 0;
  for (const auto& b : blocks) d += static_cast<std::size_t>(b.matrix.rows());
  return d;
}

ModeOperator ModeOperator::squared() const {
  ModeOperator out = *this;
  out.name = name + "^2";
  for (auto& b : out.blocks) b.matrix = b.matrix * b.matrix;
  return out;
}

Eigen::MatrixXcd ModeOperator::dense() const {
  const auto d = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    m.block(at, at, b.matrix.rows(), b.matrix.cols()) = b.matrix;
    at += b.matrix.rows();
  }
  return m;
}

Eigen::VectorXcd ModeOperator::apply(const Eigen::VectorXcd& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension()) throw std::invalid_argument("ModeOperator::apply: size mismatch");
  Eigen::VectorXcd y(x.size());
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    y.segment(at, b.matrix.rows()) = b.matrix * x.segment(at, b.matrix.cols());
    at += b.matrix.rows();
  }
  return y;
}

double block_distance(const ModeOperator& a, const ModeOperator& b) {
  if (a.blocks.size() != b.blocks.size()) throw std::invalid_argument("block_distance: different mode sets");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (a.blocks[i].frequency != b.blocks[i].frequency) throw std::invalid_argument("block_distance: different mode sets");
    worst = std::max(worst, (a.blocks[i].matrix - b.blocks[i].matrix).cwiseAbs().maxCoeff());
  }
  return worst;
}

bool blocks_identical(const ModeOperator& a, const ModeOperator& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i)
    if (a.blocks[i].frequency != b.blocks[i].frequency || a.blocks[i].matrix != b.blocks[i].matrix) return false;
  return true;
}

double self_adjointness_defect(const ModeOperator& op) {
  double worst = 0.0;
  for (const auto& b : op.blocks) worst = std::max(worst, (b.matrix - b.matrix.adjoint()).norm());
  return worst;
}

int SpectrumReport::multiplicity_of(double value) const {
  for (const auto& line : eigenvalues)
    if (same_value(line.value, Complex(value, 0.0), tolerance)) return line.multiplicity;
  return 0;
}

SpectrumReport spectrum(const ModeOperator& op, double tol) {
  std::vector<Complex> values;
  for (const auto& b : op.blocks) {
    if (op.hermitian) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b.matrix, Eigen::EigenvaluesOnly);
      for (double v : es.eigenvalues()) values.emplace_back(v, 0.0);
    } else {
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(b.matrix, false);
      for (const Complex& v : es.eigenvalues()) values.push_back(v);
    }
  }
  for (auto& v : values) {
    if (std::abs(v.real()) <= tol) v.real(0.0);
    if (std::abs(v.imag()) <= tol) v.imag(0.0);
  }
  std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  SpectrumReport rep;
  rep.model = op.model;
  rep.operator_name = op.name;
  rep.n = op.n;
  rep.cutoff = op.cutoff;
  rep.tolerance = tol;
  rep.hermitian = op.hermitian;
  for (const Complex& v : values) {
    if (!rep.eigenvalues.empty() && same_value(rep.eigenvalues.back().value, v, tol)) {
      ++rep.eigenvalues.back().multiplicity;
    } else {
      rep.eigenvalues.push_back({v, 1});
    }
  }
  return rep;
}

std::vector<double> sorted_eigenvalues(const ModeOperator& op) {
  if (!op.hermitian) throw std::invalid_argument("sorted_eigenvalues: operator is not Hermitian");
  std::vector<double> out;
  for (const auto& b : op.blocks) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b.matrix, Eigen::EigenvaluesOnly);
    for (double v : es.eigenvalues()) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double MeanCurvatureData::norm2() const {
  double s = 0.0;
  for (double h : normal) s += h * h;
  return s;
}

const FibreActions& fibre_actions(int n) {
  static std::mutex mu;
  static std::map<int, FibreActions> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_fibre_actions(n)).first;
  return it->second;
}

std::vector<std::vector<int>> torus_modes(int n, int cutoff) {
  if (n < 1) throw std::invalid_argument("torus_modes: n must be positive");
  require_cutoff(cutoff);
  std::vector<std::vector<int>> out;
  std::vector<int> k(static_cast<std::size_t>(n), -cutoff);
  while (true) {
    out.push_back(k);
    int j = n - 1;
    while (j >= 0 && k[j] == cutoff) k[j--] = -cutoff;
    if (j < 0) break;
    ++k[j];
  }
  return out;
}

ModeOperator euler_operator_torus(int n, int cutoff) {
  return torus_operator("euler", n, cutoff, fibre_actions(n).euler);
}

ModeOperator twisted_dirac_torus(int n, int cutoff) {
  return torus_operator("twisted_dirac", n, cutoff, fibre_actions(n).tangent);
}

ModeOperator dirac_witten(const ModeOperator& dirac, const MeanCurvatureData& h) {
  if (static_cast<int>(h.normal.size()) != dirac.n) throw std::invalid_argument("dirac_witten: H has the wrong dimension");
  const auto& fa = fibre_actions(dirac.n);
  Eigen::MatrixXcd hmul = Eigen::MatrixXcd::Zero(fa.normal[0].rows(), fa.normal[0].cols());
  for (int j = 0; j < dirac.n; ++j) hmul += h.normal[j] * fa.normal[j];
  ModeOperator out = dirac;
  out.name = "dirac_witten";
  out.hermitian = dirac.hermitian && h.norm2() == 0.0;
  for (auto& b : out.blocks) b.matrix -= (0.5 * dirac.n) * hmul;
  return out;
}

std::string to_string(CircleSpinStructure s) { return s == CircleSpinStructure::Trivial ? "trivial" : "nontrivial"; }

CircleSpinStructure parse_circle_structure(const std::string& s) {
  if (s == "trivial") return CircleSpinStructure::Trivial;
  if (s == "nontrivial") return CircleSpinStructure::Nontrivial;
  throw std::invalid_argument("unknown circle spin structure: " + s);
}

int circle_frame_holonomy() {
  // exp(t e_1 e_2 / 2) = cos(t/2) + sin(t/2) e_1 e_2 at t = 2 pi
  const double half_turn = std::numbers::pi;
  const double scalar = std::cos(half_turn);
  const double bivector = std::sin(half_turn);
  if (std::abs(bivector) > 1e-12 || std::abs(std::abs(scalar) - 1.0) > 1e-12)
    throw std::logic_error("circle_frame_holonomy: rotor did not close up");
  return scalar > 0 ? 1 : -1;
}

ModeOperator fundamental_dirac_circle(CircleSpinStructure s, int cutoff) {
  require_cutoff(cutoff);
  ModeOperator op = make_operator("fundamental_dirac", "circle", 1, cutoff, true);
  // -i d/dt on e^{i mu t}
  for (double mu : circle_frequencies(s == CircleSpinStructure::Nontrivial, cutoff))
    op.blocks.push_back({{mu}, Eigen::MatrixXcd::Constant(1, 1, Complex(mu, 0.0))});
  return op;
}

CircleOperators circle_operators(CircleSpinStructure tangent, int cutoff) {
  require_cutoff(cutoff);
  const int ambient = circle_frame_holonomy();
  const int tangent_sign = tangent == CircleSpinStructure::Trivial ? 1 : -1;
  // tangent_sign * normal_sign must reproduce the ambient holonomy
  const int normal_sign = ambient * tangent_sign;
  const auto& fa = fibre_actions(1);

  CircleOperators out{tangent,
                      normal_sign == 1 ? CircleSpinStructure::Trivial : CircleSpinStructure::Nontrivial,
                      tangent_sign * normal_sign,
                      make_operator("twisted_dirac", "circle", 1, cutoff, true),
                      {},
                      make_operator("euler", "circle", 1, cutoff, true)};
  for (double mu : circle_frequencies(out.total_holonomy == -1, cutoff))
    out.twisted_dirac.blocks.push_back({{mu}, Complex(0.0, mu) * fa.tangent[0]});
  for (double k : circle_frequencies(false, cutoff))
    out.euler.blocks.push_back({{k}, Complex(0.0, k) * fa.euler[0]});
  out.dirac_witten = dirac_witten(out.twisted_dirac, MeanCurvatureData::unit_circle());
  return out;
}

SquareIdentityReport verify_square_identity(const ModeOperator& dirac, const ModeOperator& dw, const MeanCurvatureData& h) {
  if (dirac.blocks.size() != dw.blocks.size()) throw std::invalid_argument("verify_square_identity: different mode sets");
  SquareIdentityReport rep;
  rep.shift = dirac.n * dirac.n * h.norm2() / 4.0;
  rep.modes = dirac.blocks.size();
  for (std::size_t i = 0; i < dirac.blocks.size(); ++i) {
    const auto& d = dirac.blocks[i].matrix;
    const auto& dh = dw.blocks[i].matrix;
    Eigen::MatrixXcd r = d * d - dh * dh - rep.shift * Eigen::MatrixXcd::Identity(d.rows(), d.cols());
    rep.max_residual = std::max(rep.max_residual, r.cwiseAbs().maxCoeff());
  }
  return rep;
}

MinMaxResult rayleigh_minmax(const ModeOperator& op, const std::vector<Eigen::VectorXcd>& trial) {
  if (!op.hermitian) throw std::invalid_argument("rayleigh_minmax: operator is not Hermitian");
  if (trial.empty()) throw DegenerateTrialSpan("rayleigh_minmax: empty trial span");
  const auto dim = static_cast<Eigen::Index>(op.dimension());
  const auto count = static_cast<Eigen::Index>(trial.size());
  if (count > dim) throw DegenerateTrialSpan("rayleigh_minmax: more trial vectors than the space dimension");
  Eigen::MatrixXcd x(dim, count);
  for (Eigen::Index c = 0; c < count; ++c) {
    if (trial[static_cast<std::size_t>(c)].size() != dim) throw std::invalid_argument("rayleigh_minmax: trial vector size mismatch");
    x.col(c) = trial[static_cast<std::size_t>(c)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(x);
  qr.setThreshold(1e-10);
  if (qr.rank() < count) throw DegenerateTrialSpan("rayleigh_minmax: trial vectors are linearly dependent");
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, count);
  Eigen::MatrixXcd aq(dim, count);
  for (Eigen::Index c = 0; c < count; ++c) aq.col(c) = op.apply(q.col(c));
  Eigen::MatrixXcd h = q.adjoint() * aq;
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);

  MinMaxResult res;
  res.span_dimension = static_cast<int>(count);
  res.bound = es.eigenvalues().maxCoeff();
  res.lambda_n = sorted_eigenvalues(op)[static_cast<std::size_t>(count - 1)];
  return res;
}

double KillingResidual::norm() const {
  double s = 0.0;
  for (const auto& v : psi_equation) s += v.squaredNorm();
  for (const auto& v : phi_equation) s += v.squaredNorm();
  return std::sqrt(s);
}

namespace {

struct WittProjections {
  std::vector<Eigen::MatrixXcd> plus;   // p_+(e_j)
  std::vector<Eigen::MatrixXcd> minus;  // p_-(e_j)
};

const WittProjections& witt_projections(int n) {
  static std::mutex mu;
  static std::map<int, WittProjections> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    const auto& model = WittModel::get(n);
    WittProjections w;
    for (int j = 0; j < n; ++j) {
      const QVector e = QVector::basis(2 * n, j);
      w.plus.push_back(model.left_matrix(p_plus(e)).to_eigen());
      w.minus.push_back(model.left_matrix(p_minus(e)).to_eigen());
    }
    it = cache.emplace(n, std::move(w)).first;
  }
  return it->second;
}

}  // namespace

KillingResidual killing_residual(int n, int cutoff, const SpinorField& psi, const SpinorField& phi, Complex alpha,
                                 const std::vector<double>& direction) {
  const auto modes = torus_modes(n, cutoff);
  if (psi.size() != modes.size() || phi.size() != modes.size())
    throw std::invalid_argument("killing_residual: field does not match the mode set");
  if (static_cast<int>(direction.size()) != n) throw std::invalid_argument("killing_residual: direction has the wrong dimension");
  const auto& w = witt_projections(n);
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::MatrixXcd pm = Eigen::MatrixXcd::Zero(d, d), pp = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    pm += direction[j] * w.minus[j];
    pp += direction[j] * w.plus[j];
  }
  KillingResidual r;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    if (psi[m].size() != d || phi[m].size() != d) throw std::invalid_argument("killing_residual: fibre size mismatch");
    double freq = 0.0;
    for (int j = 0; j < n; ++j) freq += modes[m][j] * direction[j];
    const Complex deriv(0.0, kTwoPi * freq);
    r.psi_equation.push_back(deriv * psi[m] + alpha * (pm * phi[m]));
    r.phi_equation.push_back(deriv * phi[m] + alpha * (pp * psi[m]));
  }
  return r;
}

int killing_solution_dimension(int n, int cutoff, Complex alpha) {
  const auto& w = witt_projections(n);
  const Eigen::Index d = Eigen::Index{1} << n;
  int total = 0;
  for (const auto& k : torus_modes(n, cutoff)) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n * d, 2 * d);
    for (int j = 0; j < n; ++j) {
      const Complex deriv(0.0, kTwoPi * k[j]);
      const Eigen::Index row = 2 * j * d;
      m.block(row, 0, d, d) = deriv * Eigen::MatrixXcd::Identity(d, d);
      m.block(row, d, d, d) = alpha * w.minus[j];
      m.block(row + d, 0, d, d) = alpha * w.plus[j];
      m.block(row + d, d, d, d) = deriv * Eigen::MatrixXcd::Identity(d, d);
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
    lu.setThreshold(1e-10);
    total += static_cast<int>(2 * d - lu.rank());
  }
  return total;
}

}  // namespace spinorlab
