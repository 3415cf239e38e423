#include "spinorlab/random.hpp"
#include "spinorlab/witt_model.hpp"

#include <doctest.h>

using namespace spinorlab;

namespace {

using Q = GaussianRational;
constexpr double kTol = 1e-10;
const Q kI = Q::i();

IdealSpinor random_ideal(Rng& rng, int n) {
  IdealSpinor s(n);
  for (auto& c : s.coeffs) c = random_scalar<Q>(rng);
  return s;
}

// Vector of R^{2n} in the image of J.
QVector random_normal(Rng& rng, int n) { return apply_j(embed(random_real_vector<Q>(rng, n), 2 * n)); }

// J(w) for w in J(R^n), as a vector of R^n.
QVector j_of_normal(const QVector& w) {
  const int n = w.dim() / 2;
  auto full = apply_j(w);
  QVector out(n);
  for (int k = 0; k < n; ++k) {
    REQUIRE(full[n + k] == Q(0));
    out[k] = full[k];
  }
  return out;
}

}  // namespace

TEST_CASE("Witt projectors") {
  Rng rng(1);
  for (int n = 1; n <= 4; ++n)
    for (int t = 0; t < 50; ++t) {
      QVector z = random_real_vector<Q>(rng, 2 * n);
      QVector w = random_real_vector<Q>(rng, 2 * n);
      for (int k = 0; k < 2 * n; ++k) {
        z[k] += kI * random_scalar<Q>(rng).re;
      }
      CHECK(p_minus(p_plus(z)) == QVector(2 * n));
      CHECK(p_plus(p_minus(z)) == QVector(2 * n));
      CHECK(p_plus(apply_j(z)) == kI * p_plus(z));
      CHECK(apply_j(p_plus(z)) == kI * p_plus(z));
      CHECK(p_minus(apply_j(z)) == -kI * p_minus(z));
      CHECK(p_plus(z).can(w) == z.can(p_minus(w)));
      CHECK(p_plus(z) + p_minus(z) == z);
    }
}

TEST_CASE("canonical frame at n = 1") {
  auto wf = build_witt_frame(1);
  QElement expected(2);
  expected.add_term(1, Q(Rational(1, 2)));
  expected.add_term(2, Q(Rational(0), Rational(1, 2)));
  CHECK(wf.zbar[0] == expected);
  CHECK(wf.omega_bar == expected);
  CHECK_THROWS_AS(build_witt_frame(7), std::out_of_range);
}

TEST_CASE("frame independence of omegabar, the grading and the hermitian product") {
  Rng rng(2);
  for (int n = 1; n <= 4; ++n) {
    const auto& model = WittModel::get(n);
    for (int t = 0; t < 5; ++t) {
      auto wf = build_witt_frame(n, random_rotation<Q>(rng, n));
      REQUIRE(wf.omega_bar == model.frame().omega_bar);
      for (BladeMask s = 0; s < model.dim(); ++s) {
        auto coords = model.decompose(wf.ideal_element(s));
        REQUIRE(coords.homogeneous_grade() == std::popcount(s));
        for (BladeMask r = 0; r <= s; ++r) {
          auto other = model.decompose(wf.ideal_element(r));
          Q expected = r == s ? Q(model.hermitian_scale()) : Q(0);
          REQUIRE(model.hermitian(coords, other) == expected);
        }
      }
      REQUIRE(kahler_form_witt(wf) == chevalley_to_exterior(kahler_form(n)));
    }
  }
  ExactMatrix reflection = ExactMatrix::identity(2);
  reflection(0, 0) = Q(-1);
  CHECK_THROWS_AS(build_witt_frame(2, reflection), std::invalid_argument);
  CHECK_THROWS_AS(build_witt_frame(2, Q(2) * ExactMatrix::identity(2)), std::invalid_argument);
}

TEST_CASE("ideal basis has dimension 2^n and is closed under left multiplication") {
  for (int n = 1; n <= 5; ++n) {
    const auto& model = WittModel::get(n);
    Eigen::MatrixXcd span(1 << (2 * n), static_cast<Eigen::Index>(model.dim()));
    span.setZero();
    for (BladeMask s = 0; s < model.dim(); ++s)
      for (const auto& [m, c] : model.basis_element(s).terms()) span(m, s) = to_complex(c);
    CHECK(Eigen::FullPivLU<Eigen::MatrixXcd>(span).rank() == static_cast<Eigen::Index>(model.dim()));
  }
  // Generator matrices satisfy the Clifford relations on the ideal.
  for (int n = 1; n <= 4; ++n) {
    const auto& model = WittModel::get(n);
    const auto id = ExactMatrix::identity(model.dim());
    for (int a = 0; a < 2 * n; ++a)
      for (int b = 0; b < 2 * n; ++b) {
        auto ac = model.generator_matrix(a) * model.generator_matrix(b) + model.generator_matrix(b) * model.generator_matrix(a);
        REQUIRE(ac == (a == b ? Q(-2) * id : ExactMatrix(model.dim(), model.dim())));
      }
  }
}

TEST_CASE("left multiplication") {
  const auto& m1 = WittModel::get(1);
  auto omega = IdealSpinor::basis(1, 0);
  CHECK(m1.left_mult(QElement::scalar(2, Q(1)), omega) == omega);
  CHECK(m1.left_mult(m1.frame().zbar[0], omega) == IdealSpinor(1));
  // e_1 . omegabar expanded by hand: (e_1)(e_1 + i e_2)/2 = -1/2 + (i/2) e_1 e_2 = z_1 . omegabar
  QElement by_hand(2);
  by_hand.add_term(0, Q(Rational(-1, 2)));
  by_hand.add_term(3, Q(Rational(0), Rational(1, 2)));
  CHECK(m1.basis_element(1) == by_hand);
  CHECK(m1.left_mult(QElement::generator(2, 0), omega) == IdealSpinor::basis(1, 1));
  CHECK(m1.decompose(QElement::generator(2, 1) * m1.frame().omega_bar) == kI * IdealSpinor::basis(1, 1));
  CHECK_THROWS_AS(m1.decompose(QElement::scalar(2, Q(1))), NotInIdeal);

  Rng rng(3);
  for (int n = 1; n <= 3; ++n) {
    const auto& model = WittModel::get(n);
    for (int t = 0; t < 30; ++t) {
      auto psi = random_element<Q>(rng, 2 * n, 0.15);
      auto s = random_ideal(rng, n);
      REQUIRE(model.left_mult(psi, s) == apply(model.left_matrix(psi), s));
    }
  }
}

TEST_CASE("Kahler form acts by i(2p - n) on L^p") {
  for (int n = 1; n <= 5; ++n) {
    const auto& model = WittModel::get(n);
    auto k = model.kahler_matrix();
    REQUIRE(k.is_diagonal());
    Q trace(0);
    for (BladeMask s = 0; s < model.dim(); ++s) {
      REQUIRE(k(s, s) == Q(Rational(0), Rational(2 * std::popcount(s) - n)));
      trace += k(s, s);
    }
    CHECK(trace == Q(0));
  }
  CHECK(WittModel::get(3).kahler_matrix()(3, 3) == kI);
  // the 2-form is sum_j e_j ^ e_{n+j}
  QElement expected(4);
  expected.add_term(0b0101, Q(1));
  expected.add_term(0b1010, Q(1));
  CHECK(kahler_form(2) == expected);
}

TEST_CASE("scaled hermitian product") {
  CHECK(WittModel::get(1).hermitian(IdealSpinor::basis(1, 0), IdealSpinor::basis(1, 0)) == Q(2));
  CHECK(WittModel::get(3).hermitian(IdealSpinor::basis(3, 0), IdealSpinor::basis(3, 0)) == Q(4));
  CHECK(WittModel::get(2).hermitian(IdealSpinor::basis(2, 1), IdealSpinor::basis(2, 2)) == Q(0));
  Rng rng(4);
  for (int n = 1; n <= 4; ++n) {
    const auto& model = WittModel::get(n);
    for (int t = 0; t < 50; ++t) {
      auto s = random_ideal(rng, n);
      auto s2 = random_ideal(rng, n);
      auto h = model.hermitian(s, s);
      REQUIRE(h.im == 0);
      REQUIRE((h.re > 0 || s == IdealSpinor(n)));
      auto v = random_real_vector<Q>(rng, 2 * n);
      auto lv = model.left_matrix(v);
      REQUIRE(model.hermitian(apply(lv, s), s2) + model.hermitian(s, apply(lv, s2)) == Q(0));
    }
  }
}

TEST_CASE("iso6: basis correspondence, both vector bullets, equivariance") {
  Rng rng(5);
  for (int n = 1; n <= 4; ++n) {
    const auto& model = WittModel::get(n);
    for (BladeMask m = 0; m < model.dim(); ++m) {
      REQUIRE(model.iso6(QElement::blade(n, m)) == IdealSpinor::basis(n, m));
      REQUIRE(model.iso6_inverse(IdealSpinor::basis(n, m)) == QElement::blade(n, m));
    }
    for (int t = 0; t < 30; ++t) {
      const int p = t % (n + 1);
      auto phi = random_homogeneous<Q>(rng, n, p);
      auto v = random_real_vector<Q>(rng, n);
      auto img = model.iso6(phi);
      REQUIRE(model.iso6(v.to_clifford() * phi) == apply(model.left_matrix(embed(v, 2 * n)), img));

      auto w = random_normal(rng, n);
      auto jw = j_of_normal(w);
      Q factor = Q(p % 2 ? 1 : -1) * kI;  // (-1)^{p+1} i
      REQUIRE(model.iso6(factor * (phi * jw.to_clifford())) == apply(model.left_matrix(w), img));

      auto u = random_spin_element<Q>(rng, n, 2);
      auto lhs = model.iso6(u.element() * phi * u.inverse_element());
      auto rhs = model.left_mult(diagonal_immersion(u).element(), img);
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("Jtilde") {
  const auto e1 = Vector<Q>::basis(2, 0);
  const auto e2 = Vector<Q>::basis(2, 1);
  SpinElement<Q> u(2, {e1, e2});
  auto ju = jtilde(u);
  CHECK(ju.element() == apply_j(embed(e1, 4)).to_clifford() * apply_j(embed(e2, 4)).to_clifford());
  Rng rng(6);
  for (int n = 2; n <= 4; ++n)
    for (int t = 0; t < 20; ++t) {
      auto a = random_spin_element<Q>(rng, n, 2);
      auto b = random_spin_element<Q>(rng, n, 2);
      REQUIRE(jtilde(a * b).element() == jtilde(a).element() * jtilde(b).element());
      // Ad(Jtilde(a)) on J(R^n) is J Ad(a) J^{-1}; it fixes R^n.
      auto big = ad_matrix(jtilde(a));
      auto small = ad_matrix(a);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          REQUIRE(big(n + i, n + k) == small(i, k));
          REQUIRE(big(i, k) == (i == k ? Q(1) : Q(0)));
        }
    }
}

TEST_CASE("iso9: vector bullets and diagonal equivariance") {
  Rng rng(7);
  for (int n = 1; n <= 4; ++n) {
    const auto& model = WittModel::get(n);
    for (BladeMask m = 0; m < model.dim(); ++m) REQUIRE(model.iso9(IdealSpinor::basis(n, m)) == QForm::blade(n, m));
    for (int t = 0; t < 30; ++t) {
      auto s = random_ideal(rng, n);
      auto phi = model.iso9(s);
      REQUIRE(model.iso9_inverse(phi) == s);
      auto v = random_real_vector<Q>(rng, n);
      REQUIRE(model.iso9(apply(model.left_matrix(embed(v, 2 * n)), s)) == wedge(v, phi) - contract(v, phi));

      auto w = random_normal(rng, n);
      auto jw = j_of_normal(w);
      auto image = model.iso9(apply(model.left_matrix(w), s));
      REQUIRE(image == -kI * (wedge(jw, phi) + contract(jw, phi)));
      // the same map written through f^{-1}(w) = -J(w)
      QVector finv = -jw;
      REQUIRE(image == kI * (wedge(finv, phi) + contract(finv, phi)));

      auto u = random_spin_element<Q>(rng, n, 2);
      auto moved = model.iso9(model.left_mult(diagonal_immersion(u).element(), s));
      REQUIRE(moved == exterior_power_action(ad_matrix(u), phi));
    }
  }
}

TEST_CASE("iso8: unitarity, tangent and normal actions, equivariance") {
  Rng rng(8);
  for (int n = 1; n <= 4; ++n) {
    const auto& model = WittModel::get(n);
    auto rep = build_rep(n);
    auto j = build_j(rep);
    const bool odd = rep.odd();
    const double scale = static_cast<double>(model.hermitian_scale());
    for (BladeMask a = 0; a < model.dim(); ++a) {
      auto ta = iso8(rep, j, model, IdealSpinor::basis(n, a).to_eigen());
      for (BladeMask b = 0; b < model.dim(); ++b) {
        auto tb = iso8(rep, j, model, IdealSpinor::basis(n, b).to_eigen());
        REQUIRE(std::abs(tensor_hermitian(ta, tb) / scale - (a == b ? 1.0 : 0.0)) < kTol);
      }
    }
    for (int t = 0; t < 30; ++t) {
      auto s = random_ideal(rng, n);
      auto se = s.to_eigen();
      auto img = iso8(rep, j, model, se);
      REQUIRE((iso8_inverse(rep, j, model, img) - se).norm() < kTol);

      auto v = random_real_vector<Q>(rng, n);
      auto lhs = iso8(rep, j, model, model.left_matrix(embed(v, 2 * n)).to_eigen() * se);
      REQUIRE(tensor_distance(lhs, tensor_left(rep, delta(rep, v), img, odd)) < kTol);

      // normal action on L^p: (-1)^p i (vector sign of j) Id (x) delta(J(w))
      auto w = random_normal(rng, n);
      auto jw = j_of_normal(w);
      const int p = t % (n + 1);
      auto sp = s.grade_part(p).to_eigen();
      auto out = iso8(rep, j, model, model.left_matrix(w).to_eigen() * sp);
      Complex coeff = Complex(0, p % 2 ? -1.0 : 1.0) * double(j.vector_sign);
      auto expected = coeff * tensor_right(rep, delta(rep, jw), iso8(rep, j, model, sp), odd);
      REQUIRE(tensor_distance(out, expected) < kTol);

      if (n >= 2) {
        auto u = random_spin_element<Q>(rng, n, 2);
        auto u2 = random_spin_element<Q>(rng, n, 2);
        auto g = (u.embedded(2 * n) * jtilde(u2)).element();
        auto moved = iso8(rep, j, model, model.left_matrix(g).to_eigen() * se);
        auto want = tensor_right(rep, delta(rep, u2), tensor_left(rep, delta(rep, u), img, false), false);
        REQUIRE(tensor_distance(moved, want) < kTol);
      }
    }
  }
}

TEST_CASE("Killing contraction") {
  for (int n = 1; n <= 5; ++n) {
    const auto& model = WittModel::get(n);
    const auto id = ExactMatrix::identity(model.dim());
    const auto omega = model.kahler_matrix();
    const Q half_i(Rational(0), Rational(1, 2));
    const Q half_n(Rational(n, 2));
    auto kp = killing_operator(model, true);
    auto km = killing_operator(model, false);
    REQUIRE(kp == Q(-1) * half_i * omega + half_n * id);
    REQUIRE(km == half_i * omega + half_n * id);
    REQUIRE(model.witt_pair_sum(true) == Q(-1) * kp);
    if (n % 2 == 1) {
      const Q target(Rational(n + 1, 2));
      for (BladeMask s = 0; s < model.dim(); ++s) {
        auto b = IdealSpinor::basis(n, s);
        if (std::popcount(s) == killing_grade(n, true)) REQUIRE(killing_contraction(model, b, true) == target * b);
        if (std::popcount(s) == killing_grade(n, false)) REQUIRE(killing_contraction(model, b, false) == target * b);
      }
    } else {
      CHECK_THROWS_AS(killing_grade(n, true), std::invalid_argument);
    }
  }
  auto b = IdealSpinor::basis(3, 0b011);
  CHECK(killing_contraction(WittModel::get(3), b, true) == Q(2) * b);
  CHECK(killing_contraction(WittModel::get(1), IdealSpinor::basis(1, 1), true) == IdealSpinor::basis(1, 1));
}
