#include "spinorlab/sphere_spectra.hpp"

namespace spinorlab {

namespace {

void require_odd(int n, const char* what) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument(std::string(what) + ": n must be odd and positive");
}

}  // namespace

BigInt binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<SphereSpectrumLine> closed_form_spectrum(int n, int p, int kmax) {
  if (p < 1 || p > n - 1) throw std::invalid_argument("closed_form_spectrum: p must lie in [1, n-1]");
  if (kmax < 0) throw std::invalid_argument("closed_form_spectrum: kmax must be nonnegative");
  std::vector<SphereSpectrumLine> out;
  for (int k = 0; k <= kmax; ++k) {
    SphereSpectrumLine line{n, p, k, BigInt(k + p) * BigInt(n - p + k + 1), std::nullopt};
    if (k == 0) line.multiplicity = binomial(n + 1, p);
    out.push_back(std::move(line));
  }
  return out;
}

std::string to_string(AlphaKind k) { return k == AlphaKind::Real ? "real" : "imaginary"; }

BoundResult theorem_bound(const BoundInput& in) {
  if (in.n < 1) throw InvalidBoundInput("theorem_bound: n must be positive");
  if (in.alpha2 != 0 && in.n % 2 == 0) throw InvalidBoundInput("theorem_bound: alpha != 0 needs n odd");
  if (in.killing_dim < 0) throw InvalidBoundInput("theorem_bound: N must be nonnegative");
  if (in.h_mean_sq && *in.h_mean_sq < 0) throw InvalidBoundInput("theorem_bound: mean-square |H|^2 is negative");
  if (in.h_sup_sq && *in.h_sup_sq < 0) throw InvalidBoundInput("theorem_bound: sup |H|^2 is negative");

  BoundResult r;
  r.kind = in.alpha2 < 0 ? AlphaKind::Imaginary : AlphaKind::Real;
  r.killing_dim = in.killing_dim;
  const Rational n2(in.n * in.n);
  const Rational base = Rational((in.n + 1) * (in.n + 1)) * in.alpha2 / 4;

  Rational h;
  if (in.alpha2 > 0) {
    if (!in.h_mean_sq) throw InvalidBoundInput("theorem_bound: real alpha needs the mean-square |H|^2");
    h = *in.h_mean_sq;
    r.statistic = "mean-square";
  } else if (in.alpha2 < 0) {
    if (!in.h_sup_sq) throw InvalidBoundInput("theorem_bound: imaginary alpha needs the sup of |H|^2");
    h = *in.h_sup_sq;
    r.statistic = "sup";
  } else if (in.h_mean_sq) {
    h = *in.h_mean_sq;
    r.statistic = "mean-square";
  } else if (in.h_sup_sq) {
    h = *in.h_sup_sq;
    r.statistic = "sup";
  } else {
    throw InvalidBoundInput("theorem_bound: an |H|^2 statistic is required");
  }
  r.bound = base + n2 * h / 4;
  if (in.h_sup_sq) r.doubled_count_bound = base + n2 * *in.h_sup_sq / 4;
  r.vacuous = r.bound < 0;
  if (r.vacuous) {
    r.regime = "vacuous/imaginary-alpha regime";
  } else if (in.alpha2 == 0) {
    r.regime = "parallel spinors";
  } else {
    r.regime = to_string(r.kind) + " alpha";
  }
  return r;
}

SharpnessReport sharpness_check(int n) {
  require_odd(n, "sharpness_check");
  if (n < 3) throw std::invalid_argument("sharpness_check: n must be at least 3");
  SharpnessReport r;
  r.n = n;
  r.p = (n + 1) / 2;
  const auto lines = closed_form_spectrum(n, r.p, 0);
  r.first_eigenvalue = lines.front().eigenvalue;
  r.expected = Rational((n + 1) * (n + 1), 4);
  r.multiplicity = *lines.front().multiplicity;
  r.lower_binomial = binomial(n, (n - 1) / 2);
  r.upper_binomial = binomial(n, (n + 1) / 2);
  r.killing_dim = 2 * r.upper_binomial;
  r.closed_form_count = (r.killing_dim + 1) / 2;

  BoundInput in;
  in.n = n;
  in.alpha2 = 1;
  in.h_mean_sq = Rational(0);
  in.killing_dim = r.killing_dim;
  r.bound = theorem_bound(in).bound;
  r.margin = Rational(r.first_eigenvalue) - r.bound;

  r.eigenvalue_matches = Rational(r.first_eigenvalue) == r.expected;
  r.binomial_identity = r.killing_dim == r.lower_binomial + r.upper_binomial && r.killing_dim == r.multiplicity;
  r.multiplicity_matches = r.killing_dim == r.multiplicity;
  return r;
}

KillingSpaceDims killing_space_dims(int n) {
  require_odd(n, "killing_space_dims");
  const BigInt total = 2 * binomial(n, (n + 1) / 2);
  // Both orthogonal projections are injective on K_alpha.
  return {total, total, total};
}

}  // namespace spinorlab
