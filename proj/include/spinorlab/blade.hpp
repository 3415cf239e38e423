#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace spinorlab {

inline constexpr int kMaxDim = 12;

using BladeMask = std::uint32_t;

struct DimensionMismatch : std::invalid_argument {
  DimensionMismatch(int a, int b)
      : std::invalid_argument("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

inline void require_same_dim(int a, int b) {
  if (a != b) throw DimensionMismatch(a, b);
}

inline void require_valid_dim(int dim) {
  if (dim < 0 || dim > kMaxDim) throw std::out_of_range("dimension out of range [0, 12]: " + std::to_string(dim));
}

// A basis monomial e_{i_1}...e_{i_p} with i_1 < ... < i_p. Bit j of the mask
// stands for the generator with zero-based index j.
struct Blade {
  BladeMask mask = 0;
  int dim = 0;

  int grade() const { return std::popcount(mask); }
  friend bool operator==(const Blade&, const Blade&) = default;
};

// Sign picked up when the concatenation of two increasing monomials is brought
// back to increasing order (number of inversions mod 2).
constexpr int reorder_sign(BladeMask a, BladeMask b) {
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

// Sign of e_A * e_B = sign * e_{A xor B} for the Euclidean relation e_j e_j = -1.
constexpr int clifford_sign(BladeMask a, BladeMask b) {
  int s = reorder_sign(a, b);
  if (std::popcount(a & b) & 1) s = -s;
  return s;
}

// Sign of e_A ^ e_B, zero when the blades share a generator.
constexpr int wedge_sign(BladeMask a, BladeMask b) { return (a & b) != 0 ? 0 : reorder_sign(a, b); }

}  // namespace spinorlab
