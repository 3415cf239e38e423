#pragma once

// Closed-form Hodge spectrum of closed p-forms on the round S^n and the
// eigenvalue bound fed by Kahlerian Killing spinors. Exact integers only.

#include "spinorlab/scalar.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinorlab {

BigInt binomial(int n, int k);

struct SphereSpectrumLine {
  int n = 0;
  int p = 0;
  int k = 0;
  BigInt eigenvalue;                  // (k + p)(n - p + k + 1)
  std::optional<BigInt> multiplicity;  // only for k = 0: C(n+1, p)
};

// Requires 1 <= p <= n - 1 and kmax >= 0.
std::vector<SphereSpectrumLine> closed_form_spectrum(int n, int p, int kmax);

enum class AlphaKind { Real, Imaginary };
std::string to_string(AlphaKind k);

struct InvalidBoundInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// alpha2 >= 0 encodes real alpha, alpha2 < 0 purely imaginary alpha. Real
// alpha takes the volume average of |H|^2, imaginary alpha the sup of |H|^2;
// alpha = 0 accepts either.
struct BoundInput {
  int n = 0;
  Rational alpha2{0};
  std::optional<Rational> h_mean_sq;
  std::optional<Rational> h_sup_sq;
  BigInt killing_dim{0};  // N
};

struct BoundResult {
  AlphaKind kind = AlphaKind::Real;
  std::string statistic;  // "mean-square" or "sup"
  Rational bound;         // on lambda_N^2
  // Bound on lambda_{2N}^2 from the sup statistic, when it was supplied.
  std::optional<Rational> doubled_count_bound;
  BigInt killing_dim;
  bool vacuous = false;   // bound < 0: no eigenvalue can satisfy it
  std::string regime;
};

BoundResult theorem_bound(const BoundInput& in);

struct SharpnessReport {
  int n = 0;
  int p = 0;                   // (n+1)/2
  BigInt first_eigenvalue;     // k = 0 line
  Rational expected;           // (n+1)^2 / 4
  BigInt multiplicity;         // C(n+1, p)
  BigInt lower_binomial;       // C(n, (n-1)/2)
  BigInt upper_binomial;       // C(n, (n+1)/2)
  BigInt killing_dim;          // N = 2 C(n, (n+1)/2)
  BigInt closed_form_count;    // [(N+1)/2]
  Rational bound;              // theorem bound with alpha^2 = 1, H = 0
  Rational margin;             // first eigenvalue - bound
  bool eigenvalue_matches = false;
  bool binomial_identity = false;
  bool multiplicity_matches = false;  // N = C(n+1, p)
  bool passed() const { return eigenvalue_matches && binomial_identity && multiplicity_matches && margin == 0; }
};

// Requires n odd, n >= 3.
SharpnessReport sharpness_check(int n);

struct KillingSpaceDims {
  BigInt total;      // dim K_alpha for CP^n, alpha = 1
  BigInt upper;      // projection onto the +i eigenspace of the Kahler form
  BigInt lower;      // projection onto the -i eigenspace
};

// Requires n odd.
KillingSpaceDims killing_space_dims(int n);

}  // namespace spinorlab
