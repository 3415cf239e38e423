#include "spinorlab/random.hpp"
#include "spinorlab/sphere_spectra.hpp"

#include <doctest.h>

using namespace spinorlab;

namespace {

// Pascal's triangle, row by row.
BigInt pascal(int n, int k) {
  std::vector<BigInt> row{1};
  for (int r = 1; r <= n; ++r) {
    std::vector<BigInt> next(static_cast<std::size_t>(r + 1), 1);
    for (int c = 1; c < r; ++c) next[c] = row[c - 1] + row[c];
    row = std::move(next);
  }
  return k < 0 || k > n ? BigInt(0) : row[k];
}

}  // namespace

TEST_CASE("binomial matches Pascal's triangle") {
  for (int n = 0; n <= 40; ++n)
    for (int k = -1; k <= n + 1; ++k) CHECK(binomial(n, k) == pascal(n, k));
}

TEST_CASE("closed-form lines for n = 3, p = 2") {
  const auto lines = closed_form_spectrum(3, 2, 3);
  REQUIRE(lines.size() == 4);
  const int want[] = {4, 9, 16, 25};
  for (int k = 0; k < 4; ++k) {
    CHECK(lines[k].k == k);
    CHECK(lines[k].eigenvalue == want[k]);
  }
  CHECK(*lines[0].multiplicity == 6);
  CHECK_FALSE(lines[1].multiplicity.has_value());
}

TEST_CASE("closed-form lines: other degrees and invalid input") {
  const auto l = closed_form_spectrum(5, 3, 1);
  CHECK(l[0].eigenvalue == 9);
  CHECK(*l[0].multiplicity == 20);
  CHECK(l[1].eigenvalue == 16);
  CHECK(closed_form_spectrum(4, 1, 0)[0].eigenvalue == 4);
  CHECK_THROWS_AS(closed_form_spectrum(3, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_spectrum(3, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_spectrum(3, 1, -1), std::invalid_argument);
}

TEST_CASE("sharpness for every odd n in [3, 99]") {
  for (int n = 3; n <= 99; n += 2) {
    const auto r = sharpness_check(n);
    CHECK(Rational(r.first_eigenvalue) == Rational((n + 1) * (n + 1), 4));
    CHECK(2 * pascal(n, (n + 1) / 2) == pascal(n + 1, (n + 1) / 2));
    CHECK(r.killing_dim == pascal(n + 1, (n + 1) / 2));
    CHECK(r.closed_form_count == pascal(n, (n + 1) / 2));
    CHECK(r.margin == 0);
    CHECK(r.passed());
  }
  CHECK_THROWS(sharpness_check(4));
  CHECK_THROWS(sharpness_check(1));
}

TEST_CASE("theorem bound examples") {
  BoundInput sharp;
  sharp.n = 3;
  sharp.alpha2 = 1;
  sharp.h_mean_sq = Rational(0);
  sharp.killing_dim = 6;
  const auto r = theorem_bound(sharp);
  CHECK(r.bound == 4);
  CHECK(r.statistic == "mean-square");
  CHECK_FALSE(r.vacuous);

  BoundInput flat;
  flat.n = 2;
  flat.alpha2 = 0;
  flat.h_mean_sq = Rational(0);
  flat.killing_dim = 4;
  CHECK(theorem_bound(flat).bound == 0);

  BoundInput imaginary;
  imaginary.n = 3;
  imaginary.alpha2 = -1;
  imaginary.h_sup_sq = Rational(1);
  imaginary.killing_dim = 1;
  const auto v = theorem_bound(imaginary);
  CHECK(v.bound == Rational(-7, 4));
  CHECK(v.vacuous);
  CHECK(v.regime == "vacuous/imaginary-alpha regime");
  CHECK(v.kind == AlphaKind::Imaginary);
  REQUIRE(v.doubled_count_bound.has_value());
  CHECK(*v.doubled_count_bound == Rational(-7, 4));
}

TEST_CASE("theorem bound rejects mismatched statistics") {
  BoundInput in;
  in.n = 3;
  in.alpha2 = 1;
  in.killing_dim = 1;
  CHECK_THROWS_AS(theorem_bound(in), InvalidBoundInput);
  in.h_sup_sq = Rational(1);
  CHECK_THROWS_AS(theorem_bound(in), InvalidBoundInput);
  in.alpha2 = -1;
  in.h_sup_sq.reset();
  in.h_mean_sq = Rational(1);
  CHECK_THROWS_AS(theorem_bound(in), InvalidBoundInput);
  in.n = 2;
  in.h_sup_sq = Rational(1);
  CHECK_THROWS_AS(theorem_bound(in), InvalidBoundInput);
  in.n = 3;
  in.h_sup_sq = Rational(-1);
  CHECK_THROWS_AS(theorem_bound(in), InvalidBoundInput);
}

TEST_CASE("theorem bound is monotone in alpha^2 and in the H statistic") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    BoundInput a;
    a.n = 1 + 2 * static_cast<int>(rng() % 6);
    a.killing_dim = 1;
    const bool real = t % 2 == 0;
    const Rational x = abs(random_small_rational(rng)) + Rational(1, 8);
    const Rational h = abs(random_small_rational(rng));
    a.alpha2 = real ? x : -x;
    if (real) {
      a.h_mean_sq = h;
    } else {
      a.h_sup_sq = h;
    }
    BoundInput b = a;
    const Rational step = abs(random_small_rational(rng));
    b.alpha2 = a.alpha2 + (real ? step : Rational(0));
    if (real) {
      b.h_mean_sq = h + step;
    } else {
      b.h_sup_sq = h + step;
    }
    CHECK(theorem_bound(b).bound >= theorem_bound(a).bound);
  }
}

TEST_CASE("Killing space dimensions") {
  const auto d = killing_space_dims(3);
  CHECK(d.total == 6);
  CHECK(d.upper == 6);
  CHECK(d.lower == 6);
  CHECK_THROWS(killing_space_dims(2));
}
