#pragma once

// Seeded samplers for property checks. Exact instantiations draw rational
// points (unit vectors via inverse stereographic projection, rotations via the
// Cayley transform) so that group elements stay exact.

#include "spinorlab/spin_group.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>

namespace spinorlab {

using Rng = std::mt19937_64;

inline Rational random_small_rational(Rng& rng, int max_num = 4, int max_den = 4) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

template <class S>
S random_scalar(Rng& rng) {
  if constexpr (is_exact_v<S>) {
    return S(random_small_rational(rng, 3, 2), random_small_rational(rng, 3, 2));
  } else {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double re = u(rng);
    return S(re, u(rng));
  }
}

template <class S>
Vector<S> random_real_vector(Rng& rng, int n) {
  Vector<S> v(n);
  if constexpr (is_exact_v<S>) {
    for (int j = 0; j < n; ++j) v[j] = S(random_small_rational(rng));
  } else {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int j = 0; j < n; ++j) v[j] = S(u(rng), 0.0);
  }
  return v;
}

template <class S>
Vector<S> random_unit_vector(Rng& rng, int n) {
  if (n < 1) throw std::invalid_argument("random_unit_vector: n must be positive");
  Vector<S> v(n);
  if constexpr (is_exact_v<S>) {
    // Inverse stereographic projection of a rational point of R^{n-1}, then a
    // random signed coordinate permutation so the pole is not privileged.
    std::vector<Rational> y(static_cast<std::size_t>(n - 1));
    Rational y2 = 0;
    for (auto& t : y) {
      t = random_small_rational(rng, 3, 3);
      y2 += t * t;
    }
    std::vector<Rational> x(static_cast<std::size_t>(n));
    for (int j = 0; j + 1 < n; ++j) x[j] = 2 * y[j] / (y2 + 1);
    x[n - 1] = (y2 - 1) / (y2 + 1);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution flip(0.5);
    for (int j = 0; j < n; ++j) v[perm[j]] = S(flip(rng) ? Rational(-x[j]) : x[j]);
  } else {
    std::normal_distribution<double> g(0.0, 1.0);
    double norm2 = 0.0;
    std::vector<double> x(static_cast<std::size_t>(n));
    do {
      norm2 = 0.0;
      for (auto& t : x) {
        t = g(rng);
        norm2 += t * t;
      }
    } while (norm2 < 1e-12);
    const double inv = 1.0 / std::sqrt(norm2);
    for (int j = 0; j < n; ++j) v[j] = S(x[j] * inv, 0.0);
  }
  return v;
}

template <class S>
SpinElement<S> random_spin_element(Rng& rng, int n, int k = 2) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("random_spin_element: factor count must be even and >= 2");
  std::vector<Vector<S>> f;
  for (int i = 0; i < k; ++i) f.push_back(random_unit_vector<S>(rng, n));
  return SpinElement<S>(n, std::move(f));
}

inline Vector<Complex> random_unit_vector(std::uint64_t seed, int n) {
  Rng rng(seed);
  return random_unit_vector<Complex>(rng, n);
}

inline SpinElement<Complex> random_spin_element(std::uint64_t seed, int n, int k) {
  Rng rng(seed);
  return random_spin_element<Complex>(rng, n, k);
}

// Each blade present with probability `density`.
template <class S>
CliffordElement<S> random_element(Rng& rng, int n, double density = 0.5) {
  CliffordElement<S> a(n);
  std::bernoulli_distribution keep(density);
  for (BladeMask m = 0; m < (BladeMask{1} << n); ++m)
    if (keep(rng)) a.add_term(m, random_scalar<S>(rng));
  return a;
}

template <class S>
CliffordElement<S> random_homogeneous(Rng& rng, int n, int p) {
  CliffordElement<S> a(n);
  for (BladeMask m = 0; m < (BladeMask{1} << n); ++m)
    if (std::popcount(m) == p) a.add_term(m, random_scalar<S>(rng));
  return a;
}

// Cayley transform (I - A)(I + A)^{-1} of a small rational skew matrix:
// orthogonal with determinant +1 and rational entries.
template <class S>
DenseMatrix<S> random_rotation(Rng& rng, int n) {
  ExactMatrix a(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational q = random_small_rational(rng, 2, 3);
      a(i, j) = GaussianRational(q);
      a(j, i) = GaussianRational(-q);
    }
  const auto id = ExactMatrix::identity(static_cast<std::size_t>(n));
  ExactMatrix r = (id - a) * (id + a).inverse();
  if constexpr (is_exact_v<S>) {
    return r;
  } else {
    DenseMatrix<S> out(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(i, j) = to_complex(r(i, j));
    return out;
  }
}

}  // namespace spinorlab
