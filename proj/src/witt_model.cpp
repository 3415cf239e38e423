#include "spinorlab/witt_model.hpp"

#include <map>
#include <mutex>

namespace spinorlab {

ExactMatrix complex_structure(int n) {
  const auto m = static_cast<std::size_t>(2 * n);
  ExactMatrix j(m, m);
  for (int k = 0; k < n; ++k) {
    j(n + k, k) = GaussianRational(1);
    j(k, n + k) = GaussianRational(-1);
  }
  return j;
}

QVector apply_j(const QVector& v) {
  if (v.dim() % 2 != 0) throw std::invalid_argument("apply_j: vector must live in R^{2n}");
  const int n = v.dim() / 2;
  QVector out(v.dim());
  for (int k = 0; k < n; ++k) {
    out[n + k] = v[k];
    out[k] = -v[n + k];
  }
  return out;
}

namespace {

const GaussianRational kHalf{Rational(1, 2)};
const GaussianRational kI = GaussianRational::i();

QVector projector(const QVector& v, int sign) {
  QVector jv = apply_j(v);
  QVector out(v.dim());
  // (v -+ i J v) / 2
  for (int k = 0; k < v.dim(); ++k) out[k] = kHalf * (sign > 0 ? v[k] - kI * jv[k] : v[k] + kI * jv[k]);
  return out;
}

GaussianRational exact_determinant(ExactMatrix a) {
  const std::size_t n = a.rows();
  GaussianRational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && is_zero(a(pivot, col))) ++pivot;
    if (pivot == n) return GaussianRational(0);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a(r, col))) continue;
      GaussianRational f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

}  // namespace

QVector p_plus(const QVector& v) { return projector(v, +1); }
QVector p_minus(const QVector& v) { return projector(v, -1); }

QElement WittFrame::ideal_element(BladeMask subset) const {
  QElement acc = omega_bar;
  for (int j = n - 1; j >= 0; --j)
    if (subset & (BladeMask{1} << j)) acc = z[static_cast<std::size_t>(j)] * acc;
  return acc;
}

WittFrame build_witt_frame(int n, const ExactMatrix& frame) {
  if (n < 1 || 2 * n > kMaxDim) throw std::out_of_range("build_witt_frame: n must lie in [1, 6]");
  if (frame.rows() != static_cast<std::size_t>(n) || frame.cols() != static_cast<std::size_t>(n))
    throw std::invalid_argument("build_witt_frame: frame has the wrong shape");
  if (!(frame.transpose() * frame == ExactMatrix::identity(static_cast<std::size_t>(n))))
    throw std::invalid_argument("build_witt_frame: frame is not orthonormal");
  if (!(exact_determinant(frame) == GaussianRational(1)))
    throw std::invalid_argument("build_witt_frame: frame is not positively oriented");

  WittFrame wf;
  wf.n = n;
  wf.frame = frame;
  wf.omega_bar = QElement::scalar(2 * n, GaussianRational(1));
  for (int j = 0; j < n; ++j) {
    QVector f(2 * n);
    for (int i = 0; i < n; ++i) f[i] = frame(i, j);
    wf.z.push_back(p_plus(f).to_clifford());
    wf.zbar.push_back(p_minus(f).to_clifford());
    wf.omega_bar = wf.omega_bar * wf.zbar.back();
  }
  return wf;
}

WittFrame build_witt_frame(int n) { return build_witt_frame(n, ExactMatrix::identity(static_cast<std::size_t>(n))); }

IdealSpinor IdealSpinor::grade_part(int p) const {
  IdealSpinor out(n);
  for (std::size_t m = 0; m < coeffs.size(); ++m)
    if (std::popcount(m) == p) out.coeffs[m] = coeffs[m];
  return out;
}

std::optional<int> IdealSpinor::homogeneous_grade() const {
  std::optional<int> g;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    if (is_zero(coeffs[m])) continue;
    int gm = std::popcount(m);
    if (g && *g != gm) return std::nullopt;
    g = gm;
  }
  return g;
}

Eigen::VectorXcd IdealSpinor::to_eigen() const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t m = 0; m < coeffs.size(); ++m) v(static_cast<Eigen::Index>(m)) = to_complex(coeffs[m]);
  return v;
}

IdealSpinor operator+(IdealSpinor a, const IdealSpinor& b) {
  require_same_dim(a.n, b.n);
  for (std::size_t m = 0; m < a.coeffs.size(); ++m) a.coeffs[m] += b.coeffs[m];
  return a;
}

IdealSpinor operator*(const GaussianRational& c, IdealSpinor a) {
  for (auto& x : a.coeffs) x *= c;
  return a;
}

IdealSpinor apply(const ExactMatrix& m, const IdealSpinor& s) {
  IdealSpinor out(s.n);
  out.coeffs = m.apply(s.coeffs);
  return out;
}

QElement kahler_form(int n) {
  const ExactMatrix j = complex_structure(n);
  QForm omega(2 * n);
  // Omega(e_a, e_b) = can(J e_a, e_b) = J_{ba}
  for (int a = 0; a < 2 * n; ++a)
    for (int b = a + 1; b < 2 * n; ++b) omega.add_term((BladeMask{1} << a) | (BladeMask{1} << b), j(b, a));
  return exterior_to_clifford(omega);
}

QForm kahler_form_witt(const WittFrame& wf) {
  QForm acc(2 * wf.n);
  for (int j = 0; j < wf.n; ++j)
    acc += wedge(chevalley_to_exterior(wf.z[static_cast<std::size_t>(j)]), chevalley_to_exterior(wf.zbar[static_cast<std::size_t>(j)]));
  return GaussianRational(Rational(0), Rational(-2)) * acc;
}

SpinElement<GaussianRational> jtilde(const SpinElement<GaussianRational>& u) {
  std::vector<QVector> f;
  for (const auto& v : u.factors()) f.push_back(apply_j(embed(v, 2 * u.dim())));
  return SpinElement<GaussianRational>(2 * u.dim(), std::move(f));
}

SpinElement<GaussianRational> diagonal_immersion(const SpinElement<GaussianRational>& u) {
  return u.embedded(2 * u.dim()) * jtilde(u);
}

const WittModel& WittModel::get(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<WittModel>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<WittModel>(n);
  return *slot;
}

WittModel::WittModel(int n) : n_(n), frame_(build_witt_frame(n)) {
  const std::size_t count = dim();
  basis_.reserve(count);
  for (BladeMask s = 0; s < count; ++s) basis_.push_back(frame_.ideal_element(s));

  // Pivot blade for z_I . omegabar: e_j for every j outside I and nothing from
  // the pairs j in I. Each basis element must be the only one using its pivot.
  for (BladeMask s = 0; s < count; ++s) {
    const BladeMask pivot = static_cast<BladeMask>(~s) & static_cast<BladeMask>(count - 1);
    GaussianRational c = basis_[s].coefficient(pivot);
    if (is_zero(c)) throw std::logic_error("WittModel: missing pivot blade");
    for (BladeMask t = 0; t < count; ++t)
      if (t != s && !is_zero(basis_[t].coefficient(pivot))) throw std::logic_error("WittModel: pivot blade not unique");
    pivots_.push_back(pivot);
    pivot_coeffs_.push_back(c);
  }

  for (int k = 0; k < 2 * n_; ++k) {
    ExactMatrix g(count, count);
    const QElement ek = QElement::generator(2 * n_, k);
    for (BladeMask s = 0; s < count; ++s) {
      IdealSpinor col = decompose(ek * basis_[s]);
      for (std::size_t r = 0; r < count; ++r) g(r, s) = col.coeffs[r];
    }
    std::vector<std::vector<std::pair<std::size_t, GaussianRational>>> cols(count);
    for (std::size_t c = 0; c < count; ++c)
      for (std::size_t r = 0; r < count; ++r)
        if (!is_zero(g(r, c))) cols[c].emplace_back(r, g(r, c));
    sparse_generators_.push_back(std::move(cols));
    generators_.push_back(std::move(g));
  }

  ExactMatrix fwd(count, count);
  for (BladeMask m = 0; m < count; ++m) {
    IdealSpinor col = iso6(QElement::blade(n_, m));
    for (std::size_t r = 0; r < count; ++r) fwd(r, m) = col.coeffs[r];
  }
  iso6_inv_ = fwd.inverse();
  iso6_fwd_numeric_ = fwd.to_eigen();
  iso6_inv_numeric_ = iso6_inv_.to_eigen();
}

IdealSpinor WittModel::decompose(const QElement& x) const {
  require_same_dim(x.dim(), 2 * n_);
  IdealSpinor s(n_);
  for (std::size_t i = 0; i < dim(); ++i) s.coeffs[i] = x.coefficient(pivots_[i]) / pivot_coeffs_[i];
  if (!(to_clifford(s) == x)) throw NotInIdeal("element does not lie in the spinor ideal");
  return s;
}

QElement WittModel::to_clifford(const IdealSpinor& s) const {
  require_same_dim(s.n, n_);
  QElement out(2 * n_);
  for (std::size_t i = 0; i < dim(); ++i)
    if (!is_zero(s.coeffs[i])) out += s.coeffs[i] * basis_[i];
  return out;
}

ExactMatrix WittModel::left_matrix(const QElement& psi) const {
  require_same_dim(psi.dim(), 2 * n_);
  ExactMatrix out(dim(), dim());
  for (const auto& [m, c] : psi.terms()) {
    ExactMatrix acc = ExactMatrix::identity(dim());
    for (int k = 0; k < 2 * n_; ++k)
      if (m & (BladeMask{1} << k)) acc = acc * generators_[static_cast<std::size_t>(k)];
    out += c * acc;
  }
  return out;
}

ExactMatrix WittModel::left_matrix(const QVector& v) const {
  require_same_dim(v.dim(), 2 * n_);
  ExactMatrix out(dim(), dim());
  for (int k = 0; k < v.dim(); ++k)
    if (!is_zero(v[k])) out += v[k] * generators_[static_cast<std::size_t>(k)];
  return out;
}

IdealSpinor WittModel::left_mult(const QElement& psi, const IdealSpinor& s) const {
  return decompose(psi * to_clifford(s));
}

IdealSpinor WittModel::apply_vector(const QVector& v, const IdealSpinor& s) const {
  require_same_dim(v.dim(), 2 * n_);
  require_same_dim(s.n, n_);
  IdealSpinor out(n_);
  for (int k = 0; k < 2 * n_; ++k) {
    if (is_zero(v[k])) continue;
    const auto& cols = sparse_generators_[static_cast<std::size_t>(k)];
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (is_zero(s.coeffs[c])) continue;
      const GaussianRational vc = v[k] * s.coeffs[c];
      for (const auto& [r, g] : cols[c]) out.coeffs[r] += g * vc;
    }
  }
  return out;
}

IdealSpinor WittModel::apply_spin(const SpinElement<GaussianRational>& g, const IdealSpinor& s) const {
  require_same_dim(g.dim(), 2 * n_);
  IdealSpinor out = s;
  const auto& f = g.factors();
  for (auto it = f.rbegin(); it != f.rend(); ++it) out = apply_vector(*it, out);
  return out;
}

ExactMatrix WittModel::kahler_matrix() const { return left_matrix(kahler_form(n_)); }

Rational WittModel::hermitian_scale() const { return Rational(BigInt(1) << ((n_ + 1) / 2)); }

GaussianRational WittModel::hermitian(const IdealSpinor& s, const IdealSpinor& t) const {
  require_same_dim(s.n, n_);
  require_same_dim(t.n, n_);
  GaussianRational acc(0);
  for (std::size_t i = 0; i < dim(); ++i) acc += s.coeffs[i] * conj(t.coeffs[i]);
  return GaussianRational(hermitian_scale()) * acc;
}

IdealSpinor WittModel::iso6(const QElement& a) const {
  require_same_dim(a.dim(), n_);
  return decompose(embed(a) * frame_.omega_bar);
}

QElement WittModel::iso6_inverse(const IdealSpinor& s) const {
  require_same_dim(s.n, n_);
  auto c = iso6_inv_.apply(s.coeffs);
  QElement out(n_);
  for (std::size_t m = 0; m < c.size(); ++m) out.add_term(static_cast<BladeMask>(m), c[m]);
  return out;
}

QForm WittModel::iso9(const IdealSpinor& s) const { return chevalley_to_exterior(iso6_inverse(s)); }

IdealSpinor WittModel::iso9_inverse(const QForm& f) const { return iso6(exterior_to_clifford(f)); }

ExactMatrix WittModel::witt_pair_sum(bool plus) const {
  ExactMatrix out(dim(), dim());
  for (int j = 0; j < n_; ++j) {
    const QVector e = QVector::basis(2 * n_, j);
    const ExactMatrix zp = left_matrix(p_plus(e));
    const ExactMatrix zm = left_matrix(p_minus(e));
    out += plus ? zp * zm : zm * zp;
  }
  return out;
}

ExactMatrix killing_operator(const WittModel& model, bool plus) {
  return GaussianRational(-1) * model.witt_pair_sum(plus);
}

IdealSpinor killing_contraction(const WittModel& model, const IdealSpinor& s, bool plus) {
  return apply(killing_operator(model, plus), s);
}

int killing_grade(int n, bool plus) {
  if (n % 2 == 0) throw std::invalid_argument("killing_grade: n must be odd for a half-integer grade (n +- 1)/2");
  return plus ? (n + 1) / 2 : (n - 1) / 2;
}

TensorSpinor iso8(const SpinorRep& rep, const RealStructure& j, const WittModel& model, const Eigen::VectorXcd& s) {
  require_same_dim(rep.n, model.n());
  if (s.size() != static_cast<Eigen::Index>(model.dim())) throw std::invalid_argument("iso8: wrong spinor length");
  const Eigen::VectorXcd blades = model.iso6_inverse_numeric() * s;
  CliffordElement<Complex> a(model.n());
  for (BladeMask m = 0; m < model.dim(); ++m) a.add_term(m, blades(static_cast<Eigen::Index>(m)));
  return clif_to_tensor(rep, j, a);
}

Eigen::VectorXcd iso8_inverse(const SpinorRep& rep, const RealStructure& j, const WittModel& model, const TensorSpinor& t) {
  const CliffordElement<Complex> a = tensor_to_clif(rep, j, t);
  Eigen::VectorXcd blades = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(model.dim()));
  for (const auto& [blade, c] : a.terms()) blades(static_cast<Eigen::Index>(blade)) = c;
  return model.iso6_numeric() * blades;
}

}  // namespace spinorlab
