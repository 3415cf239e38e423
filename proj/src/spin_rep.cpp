#include "spinorlab/spin_rep.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <random>
#include <stdexcept>

namespace spinorlab {
namespace {

using Eigen::MatrixXcd;

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MatrixXcd pauli(char which) {
  MatrixXcd p(2, 2);
  const Complex i(0.0, 1.0);
  switch (which) {
    case 'x':
      p << 0.0, 1.0, 1.0, 0.0;
      break;
    case 'y':
      p << 0.0, -i, i, 0.0;
      break;
    case 'z':
      p << 1.0, 0.0, 0.0, -1.0;
      break;
    default:
      p = MatrixXcd::Identity(2, 2);
  }
  return p;
}

// Z^{(x)k} (x) middle (x) I^{(x)(m-k-1)}; for k == m the middle factor is dropped.
MatrixXcd jordan_wigner(int m, int k, char middle) {
  MatrixXcd out = MatrixXcd::Identity(1, 1);
  for (int q = 0; q < m; ++q) {
    char f = q < k ? 'z' : (q == k ? middle : 'i');
    out = kron(out, pauli(f));
  }
  return out;
}

}  // namespace

SpinorRep build_rep(int n) {
  if (n < 1 || n > kMaxRepDim) throw std::out_of_range("build_rep: n must lie in [1, 12]");
  SpinorRep rep;
  rep.n = n;
  const int m = n / 2;
  rep.d = 1 << m;
  const Complex i(0.0, 1.0);
  for (int k = 0; k < m; ++k) {
    rep.gammas.push_back(i * jordan_wigner(m, k, 'x'));
    rep.gammas.push_back(i * jordan_wigner(m, k, 'y'));
  }
  if (rep.odd()) rep.gammas.push_back(i * jordan_wigner(m, m, 'z'));

  if (rep.odd()) {
    MatrixXcd vol = delta(rep, complex_volume_element(n));
    if ((vol + MatrixXcd::Identity(rep.d, rep.d)).norm() < 1e-12) {
      for (auto& g : rep.gammas) g = -g;
      rep.swapped = true;
      vol = delta(rep, complex_volume_element(n));
    }
    if ((vol - MatrixXcd::Identity(rep.d, rep.d)).norm() > 1e-12)
      throw std::logic_error("build_rep: complex volume element is not +-Id");
  }
  return rep;
}

Eigen::MatrixXcd blade_matrix(const SpinorRep& rep, BladeMask mask) {
  if (mask >> rep.n) throw std::out_of_range("blade_matrix: blade outside the algebra");
  MatrixXcd out = MatrixXcd::Identity(rep.d, rep.d);
  for (int j = 0; j < rep.n; ++j)
    if (mask & (BladeMask{1} << j)) out = out * rep.gammas[static_cast<std::size_t>(j)];
  return out;
}

CliffordElement<GaussianRational> complex_volume_element(int n) {
  // i^{[(n+1)/2]}
  const int power = ((n + 1) / 2) % 4;
  static const GaussianRational units[4] = {GaussianRational(1), GaussianRational::i(), GaussianRational(-1),
                                            -GaussianRational::i()};
  return CliffordElement<GaussianRational>::blade(n, (BladeMask{1} << n) - 1, units[power]);
}

int delta_image_rank(const SpinorRep& rep) {
  const int blades = 1 << rep.n;
  MatrixXcd span(static_cast<Eigen::Index>(rep.d) * rep.d, blades);
  for (int m = 0; m < blades; ++m) {
    MatrixXcd b = blade_matrix(rep, static_cast<BladeMask>(m));
    span.col(m) = Eigen::Map<Eigen::VectorXcd>(b.data(), b.size());
  }
  Eigen::FullPivLU<MatrixXcd> lu(span);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

Complex hermitian(const Eigen::VectorXcd& sigma, const Eigen::VectorXcd& sigma_prime) {
  if (sigma.size() != sigma_prime.size()) throw DimensionMismatch(static_cast<int>(sigma.size()), static_cast<int>(sigma_prime.size()));
  return sigma_prime.dot(sigma);  // sum conj(sigma'_a) sigma_a
}

std::string to_string(StructureKind k) {
  switch (k) {
    case StructureKind::Real:
      return "real";
    case StructureKind::Quaternionic:
      return "quaternionic";
    case StructureKind::Mixed:
      return "mixed";
  }
  return "mixed";
}

namespace {

// Null space of the complex-linear map C -> G C - C conj(G) over all G.
MatrixXcd intertwiner_kernel(int d, const std::vector<MatrixXcd>& gens) {
  const Eigen::Index unknowns = static_cast<Eigen::Index>(d) * d;
  if (gens.empty()) return MatrixXcd::Identity(unknowns, unknowns);
  // Accumulate the Gram matrix of the stacked system; its null space is the
  // common kernel.
  MatrixXcd gram = MatrixXcd::Zero(unknowns, unknowns);
  const MatrixXcd id = MatrixXcd::Identity(d, d);
  for (const auto& g : gens) {
    // column-major vec: vec(G C) = (I (x) G) vec C, vec(C B) = (B^T (x) I) vec C
    MatrixXcd op = kron(id, g) - kron(g.conjugate().transpose(), id);
    gram += op.adjoint() * op;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(gram);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (std::abs(ev(k)) < 1e-9 * scale) null_cols.push_back(k);
  MatrixXcd basis(unknowns, static_cast<Eigen::Index>(null_cols.size()));
  for (std::size_t k = 0; k < null_cols.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(null_cols[k]);
  return basis;
}

// Invertible unitary member of the kernel, or an empty matrix.
MatrixXcd unitary_intertwiner(int d, const MatrixXcd& kernel) {
  if (kernel.cols() == 0) return {};
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int attempt = 0; attempt < 16; ++attempt) {
    Eigen::VectorXcd w(kernel.cols());
    for (Eigen::Index k = 0; k < w.size(); ++k) w(k) = Complex(g(rng), g(rng));
    Eigen::VectorXcd v = kernel * w;
    MatrixXcd c = Eigen::Map<MatrixXcd>(v.data(), d, d);
    Eigen::JacobiSVD<MatrixXcd> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < 1e-6 * sv(0)) continue;
    return svd.matrixU() * svd.matrixV().adjoint();
  }
  return {};
}

int commutation_sign(const SpinorRep& rep, const MatrixXcd& c) {
  bool commutes = true;
  bool anticommutes = true;
  for (const auto& g : rep.gammas) {
    MatrixXcd lhs = g * c;
    MatrixXcd rhs = c * g.conjugate();
    if ((lhs - rhs).norm() > 1e-9) commutes = false;
    if ((lhs + rhs).norm() > 1e-9) anticommutes = false;
  }
  if (commutes) return 1;
  if (anticommutes) return -1;
  return 0;
}

}  // namespace

RealStructure build_j(const SpinorRep& rep) {
  if (rep.n > kMaxRealStructureDim) throw std::out_of_range("build_j: n must be at most 10");
  const int d = rep.d;

  MatrixXcd c = unitary_intertwiner(d, intertwiner_kernel(d, rep.gammas));
  if (c.size() == 0) {
    std::vector<MatrixXcd> even;
    for (int k = 1; k < rep.n; ++k) even.push_back(rep.gammas[0] * rep.gammas[static_cast<std::size_t>(k)]);
    c = unitary_intertwiner(d, intertwiner_kernel(d, even));
  }
  if (c.size() == 0) throw std::logic_error("build_j: no invertible antilinear intertwiner found");

  RealStructure j;
  j.c = c;
  const MatrixXcd sq = j.square();
  const MatrixXcd id = MatrixXcd::Identity(d, d);
  if ((sq - id).norm() < 1e-9)
    j.kind = StructureKind::Real;
  else if ((sq + id).norm() < 1e-9)
    j.kind = StructureKind::Quaternionic;
  else
    j.kind = StructureKind::Mixed;
  j.vector_sign = commutation_sign(rep, c);
  return j;
}

Eigen::RowVectorXcd sigma_to_dual(const RealStructure& j, const Eigen::VectorXcd& sigma) {
  return (j.c.conjugate() * sigma).transpose();
}

Complex tensor_hermitian(const TensorSpinor& a, const TensorSpinor& b) {
  if (a.blocks.size() != b.blocks.size()) throw std::invalid_argument("tensor_hermitian: block count mismatch");
  Complex acc = 0.0;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) acc += (a.blocks[k].array() * b.blocks[k].conjugate().array()).sum();
  return acc;
}

double tensor_distance(const TensorSpinor& a, const TensorSpinor& b) {
  if (a.blocks.size() != b.blocks.size()) throw std::invalid_argument("tensor_distance: block count mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.blocks.size(); ++k) worst = std::max(worst, (a.blocks[k] - b.blocks[k]).cwiseAbs().maxCoeff());
  return worst;
}

TensorSpinor operator+(const TensorSpinor& a, const TensorSpinor& b) {
  TensorSpinor out = a;
  for (std::size_t k = 0; k < out.blocks.size(); ++k) out.blocks[k] += b.blocks.at(k);
  return out;
}

TensorSpinor operator*(Complex c, const TensorSpinor& a) {
  TensorSpinor out = a;
  for (auto& b : out.blocks) b *= c;
  return out;
}

TensorSpinor tensor_left(const SpinorRep& rep, const Eigen::MatrixXcd& a, const TensorSpinor& t, bool alternate) {
  TensorSpinor out = t;
  for (std::size_t k = 0; k < out.blocks.size(); ++k) {
    out.blocks[k] = a * t.blocks[k];
    if (alternate && rep.odd() && k == 1) out.blocks[k] = -out.blocks[k];
  }
  return out;
}

TensorSpinor tensor_right(const SpinorRep& rep, const Eigen::MatrixXcd& b, const TensorSpinor& t, bool alternate) {
  TensorSpinor out = t;
  for (std::size_t k = 0; k < out.blocks.size(); ++k) {
    out.blocks[k] = t.blocks[k] * b.transpose();
    if (alternate && rep.odd() && k == 1) out.blocks[k] = -out.blocks[k];
  }
  return out;
}

// A -> sum_k A sigma_k (x) j^{-1}(sigma_k) = A (C^{-1})^*.
TensorSpinor clif_to_tensor(const SpinorRep& rep, const RealStructure& j, const CliffordElement<Complex>& a) {
  require_same_dim(rep.n, a.dim());
  const MatrixXcd right = j.c.inverse().adjoint();
  TensorSpinor t;
  t.blocks.assign(static_cast<std::size_t>(rep.copies()), MatrixXcd::Zero(rep.d, rep.d));
  for (const auto& [m, c] : a.terms()) {
    MatrixXcd b = blade_matrix(rep, m);
    t.blocks[0] += c * b;
    // second summand of Cl_n = End + End sends v to -delta(v)
    if (rep.odd()) t.blocks[1] += ((std::popcount(m) & 1) ? -c : c) * b;
  }
  for (auto& b : t.blocks) b = b * right;
  return t;
}

CliffordElement<Complex> tensor_to_clif(const SpinorRep& rep, const RealStructure& j, const TensorSpinor& t) {
  if (static_cast<int>(t.blocks.size()) != rep.copies()) throw std::invalid_argument("tensor_to_clif: wrong block count");
  const MatrixXcd back = j.c.adjoint();  // ((C^{-1})^*)^{-1}
  std::vector<MatrixXcd> ends;
  for (const auto& b : t.blocks) ends.push_back(b * back);
  CliffordElement<Complex> out(rep.n);
  const double norm = static_cast<double>(rep.d) * rep.copies();
  for (BladeMask m = 0; m < (BladeMask{1} << rep.n); ++m) {
    MatrixXcd bm = blade_matrix(rep, m);
    Complex c = (bm.adjoint() * ends[0]).trace();
    if (rep.odd()) {
      Complex c2 = (bm.adjoint() * ends[1]).trace();
      c += (std::popcount(m) & 1) ? -c2 : c2;
    }
    c /= norm;
    if (std::abs(c) > 1e-13) out.add_term(m, c);
  }
  return out;
}

}  // namespace spinorlab
