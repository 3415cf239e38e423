#include "spinorlab/flat_models.hpp"
#include "spinorlab/random.hpp"

#include <doctest.h>

#include <map>
#include <numbers>

using namespace spinorlab;

namespace {

constexpr double kTol = 1e-10;
constexpr double kPi = std::numbers::pi;

// (e_j ^ - e_j _|) on forms, from the blade definition: the sign counts the
// basis covectors in front of slot j.
Eigen::MatrixXcd euler_generator_oracle(int n, int j) {
  const int d = 1 << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int s = 0; s < d; ++s) {
    const double sign = (std::popcount(static_cast<unsigned>(s) & ((1u << j) - 1)) % 2) ? -1.0 : 1.0;
    const int t = s ^ (1 << j);
    m(t, s) = (s >> j & 1) ? -sign : sign;
  }
  return m;
}

double mode_norm2(const std::vector<double>& k) {
  double s = 0.0;
  for (double x : k) s += x * x;
  return s;
}

void eigenvalues_2x2(const Eigen::MatrixXcd& m, std::vector<Complex>& out) {
  const Complex tr = m(0, 0) + m(1, 1);
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Complex root = std::sqrt(tr * tr - 4.0 * det);
  out.push_back((tr + root) / 2.0);
  out.push_back((tr - root) / 2.0);
}

bool close_multiset(std::vector<Complex> a, std::vector<Complex> b, double tol) {
  auto order = [](Complex x, Complex y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); };
  auto snap = [](std::vector<Complex>& v) {
    for (auto& x : v) x = {std::round(x.real() * 1e8) / 1e8, std::round(x.imag() * 1e8) / 1e8};
  };
  snap(a);
  snap(b);
  std::sort(a.begin(), a.end(), order);
  std::sort(b.begin(), b.end(), order);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace

TEST_CASE("torus modes enumerate the cube [-K, K]^n") {
  CHECK(torus_modes(1, 2).size() == 5);
  CHECK(torus_modes(3, 1).size() == 27);
  CHECK(torus_modes(2, 1).front() == std::vector<int>{-1, -1});
  CHECK_THROWS_AS(torus_modes(2, 0), std::invalid_argument);
}

TEST_CASE("fibre actions: tangent Clifford action equals the Euler symbol") {
  for (int n = 1; n <= 4; ++n) {
    const auto& fa = fibre_actions(n);
    CHECK(fa.tangent_matches_euler);
    for (int j = 0; j < n; ++j) {
      CHECK((fa.euler[j] - euler_generator_oracle(n, j)).norm() < kTol);
      CHECK((fa.tangent[j] * fa.tangent[j] + Eigen::MatrixXcd::Identity(1 << n, 1 << n)).norm() < kTol);
    }
  }
}

TEST_CASE("torus: Euler blocks match the symbol of d + delta") {
  for (int n = 1; n <= 3; ++n) {
    const auto euler = euler_operator_torus(n, 2);
    for (const auto& b : euler.blocks) {
      Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(1 << n, 1 << n);
      for (int j = 0; j < n; ++j) want += Complex(0.0, 2.0 * kPi * b.frequency[j]) * euler_generator_oracle(n, j);
      CHECK((b.matrix - want).norm() < kTol);
    }
  }
}

TEST_CASE("torus: twisted Dirac equals Euler and squares to 4 pi^2 |k|^2") {
  for (int n = 1; n <= 4; ++n) {
    const int cutoff = n <= 2 ? 3 : 1;
    const auto dirac = twisted_dirac_torus(n, cutoff);
    CHECK(blocks_identical(dirac, euler_operator_torus(n, cutoff)));
    CHECK(self_adjointness_defect(dirac) < kTol);
    for (const auto& b : dirac.blocks) {
      const auto d = b.matrix.rows();
      CHECK((b.matrix * b.matrix - 4.0 * kPi * kPi * mode_norm2(b.frequency) * Eigen::MatrixXcd::Identity(d, d)).norm() < 1e-8);
    }
  }
}

TEST_CASE("torus: n = 2, K = 1 spectrum") {
  const auto rep = spectrum(twisted_dirac_torus(2, 1));
  CHECK(rep.kernel_dimension() == 4);
  // four unit modes, each contributing +-2 pi twice
  CHECK(rep.multiplicity_of(2.0 * kPi) == 8);
  CHECK(rep.multiplicity_of(-2.0 * kPi) == 8);
  CHECK(rep.multiplicity_of(2.0 * kPi * std::sqrt(2.0)) == 8);
  int total = 0;
  for (const auto& e : rep.eigenvalues) total += e.multiplicity;
  CHECK(total == 9 * 4);
}

TEST_CASE("torus: D^2 multiplicity is 2^n times the lattice count") {
  Rng rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + trial % 3;
    const int cutoff = 1 + static_cast<int>(rng() % 3);
    std::map<long, int> count;
    for (const auto& k : torus_modes(n, cutoff)) {
      long m = 0;
      for (int x : k) m += static_cast<long>(x) * x;
      ++count[m];
    }
    const auto sq = spectrum(twisted_dirac_torus(n, cutoff).squared());
    CHECK(sq.eigenvalues.size() == count.size());
    for (const auto& [m, c] : count) CHECK(sq.multiplicity_of(4.0 * kPi * kPi * static_cast<double>(m)) == (c << n));
  }
}

TEST_CASE("Dirac-Witten operator subtracts half the normal action of H") {
  for (int n = 1; n <= 3; ++n) {
    const auto d = twisted_dirac_torus(n, 1);
    MeanCurvatureData h{std::vector<double>(static_cast<std::size_t>(n), 0.0)};
    h.normal[0] = 0.75;
    const auto dw = dirac_witten(d, h);
    const auto& fa = fibre_actions(n);
    for (std::size_t i = 0; i < d.blocks.size(); ++i)
      CHECK((dw.blocks[i].matrix - (d.blocks[i].matrix - 0.5 * n * 0.75 * fa.normal[0])).norm() < kTol);
    CHECK(blocks_identical(dirac_witten(d, MeanCurvatureData::zero(n)), d));
  }
}

TEST_CASE("circle spin structures and holonomy") {
  CHECK(circle_frame_holonomy() == -1);
  for (auto s : {CircleSpinStructure::Trivial, CircleSpinStructure::Nontrivial})
    CHECK(parse_circle_structure(to_string(s)) == s);
  CHECK_THROWS_AS(parse_circle_structure("periodic-ish"), std::invalid_argument);
  for (auto s : {CircleSpinStructure::Trivial, CircleSpinStructure::Nontrivial}) {
    const auto ops = circle_operators(s, 3);
    // the ambient holonomy -1 forces opposite structures on the two line bundles
    CHECK(ops.total_holonomy == -1);
    CHECK(ops.normal != s);
  }
}

TEST_CASE("circle: fundamental Dirac spectra") {
  const auto anti = spectrum(fundamental_dirac_circle(CircleSpinStructure::Nontrivial, 2));
  REQUIRE(anti.eigenvalues.size() == 4);
  const double want[] = {-1.5, -0.5, 0.5, 1.5};
  for (int i = 0; i < 4; ++i) {
    CHECK(anti.eigenvalues[i].value.real() == doctest::Approx(want[i]));
    CHECK(anti.eigenvalues[i].multiplicity == 1);
  }
  const auto periodic = spectrum(fundamental_dirac_circle(CircleSpinStructure::Trivial, 2));
  CHECK(periodic.kernel_dimension() == 1);
  CHECK(periodic.eigenvalues.size() == 5);
}

TEST_CASE("circle: induced operator is not a square root of the Hodge Laplacian") {
  for (auto s : {CircleSpinStructure::Trivial, CircleSpinStructure::Nontrivial}) {
    const auto ops = circle_operators(s, 20);
    for (double v : sorted_eigenvalues(ops.twisted_dirac.squared())) CHECK(v >= 0.25 - 1e-9);
    CHECK(spectrum(ops.euler.squared()).kernel_dimension() == 2);
    const auto sq = verify_square_identity(ops.twisted_dirac, ops.dirac_witten, MeanCurvatureData::unit_circle());
    CHECK(sq.shift == 0.25);
    CHECK(sq.max_residual < kTol);
    CHECK(self_adjointness_defect(ops.dirac_witten) > 0.5);
  }
}

TEST_CASE("circle: Dirac-Witten eigenvalues agree with the 2x2 closed form per mode") {
  const auto ops = circle_operators(CircleSpinStructure::Nontrivial, 5);
  std::vector<Complex> oracle;
  for (const auto& b : ops.dirac_witten.blocks) {
    REQUIRE(b.matrix.rows() == 2);
    eigenvalues_2x2(b.matrix, oracle);
  }
  std::vector<Complex> got;
  for (const auto& e : spectrum(ops.dirac_witten).eigenvalues)
    for (int m = 0; m < e.multiplicity; ++m) got.push_back(e.value);
  CHECK(close_multiset(oracle, got, 1e-8));
}

TEST_CASE("square identity residual is independent of the cutoff") {
  for (int cutoff : {1, 5, 20}) {
    const auto ops = circle_operators(CircleSpinStructure::Trivial, cutoff);
    CHECK(verify_square_identity(ops.twisted_dirac, ops.dirac_witten, MeanCurvatureData::unit_circle()).max_residual < kTol);
  }
  for (int n = 1; n <= 3; ++n) {
    const auto d = twisted_dirac_torus(n, 2);
    const auto h = MeanCurvatureData::zero(n);
    CHECK(verify_square_identity(d, dirac_witten(d, h), h).max_residual < kTol);
  }
}

TEST_CASE("block_distance rejects operators on different modes") {
  CHECK_THROWS(block_distance(twisted_dirac_torus(1, 1), twisted_dirac_torus(1, 2)));
}

TEST_CASE("min-max: eigenvector spans are sharp, random spans are sound") {
  const auto op = circle_operators(CircleSpinStructure::Nontrivial, 4).twisted_dirac.squared();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.dense());
  for (int count = 1; count <= 6; ++count) {
    std::vector<Eigen::VectorXcd> span;
    for (int c = 0; c < count; ++c) span.push_back(es.eigenvectors().col(c));
    const auto res = rayleigh_minmax(op, span);
    CHECK(res.span_dimension == count);
    CHECK(res.bound == doctest::Approx(es.eigenvalues()(count - 1)).epsilon(1e-9));
    CHECK(res.lambda_n == doctest::Approx(es.eigenvalues()(count - 1)).epsilon(1e-9));
  }
  Rng rng(5);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    std::vector<Eigen::VectorXcd> span;
    for (int c = 0; c < 1 + t % 5; ++c) {
      Eigen::VectorXcd v(static_cast<Eigen::Index>(op.dimension()));
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
      span.push_back(v);
    }
    CHECK(rayleigh_minmax(op, span).sound(1e-8));
  }
  std::vector<Eigen::VectorXcd> flat{es.eigenvectors().col(0), 2.0 * es.eigenvectors().col(0)};
  CHECK_THROWS_AS(rayleigh_minmax(op, flat), DegenerateTrialSpan);
  CHECK_THROWS_AS(rayleigh_minmax(op, {}), DegenerateTrialSpan);
}

TEST_CASE("parallel pairs on the torus") {
  for (int n = 1; n <= 3; ++n) CHECK(killing_solution_dimension(n, 2, 0.0) == 2 << n);
}
