#pragma once

// Exact symmetry relations between the structural operators, each paired
// with whether it is expected to hold at the given n.

#include <cstddef>
#include <string>
#include <vector>

#include "oscchain/matrix.hpp"

namespace oscchain {

struct SymmetryRelation {
  std::string name;
  bool expected = true;  // the identity should hold at this n
  bool observed = false;

  bool matches() const { return expected == observed; }
};

inline std::vector<SymmetryRelation> symmetry_relations(std::size_t n) {
  const IntMatrix hc = circular_coupling_matrix(n);
  const IntMatrix hl = linear_coupling_matrix(n);
  const IntMatrix t = shift_matrix(n);
  const IntMatrix j = exchange_matrix(n);
  const IntMatrix s = sign_matrix(n);
  const IntMatrix id = IntMatrix::identity(n);
  const IntMatrix minus4s = ExactInt{-4} * s;
  const bool even = n % 2 == 0;

  return {
      {"[H_c,T]=0", true, commutator(hc, t).is_zero()},
      {"[H_c,J]=0", true, commutator(hc, j).is_zero()},
      {"[H_l,J]=0", true, commutator(hl, j).is_zero()},
      // Z_N and Z_2 generators commute only when they coincide (n = 2).
      {"[J,T]=0", n == 2, commutator(j, t).is_zero()},
      {"J=T", n == 2, j == t},
      {"T^n=1", true, power(t, static_cast<unsigned>(n)) == id},
      {"J^2=1", true, j * j == id},
      {"S^2=1", true, s * s == id},
      {"H_c=T+T^-1-2", true, reconstruct_circular_from_shift(n) == hc},
      {"{H_l,S}=-4S", true, anticommutator(hl, s) == minus4s},
      {"{H_c,S}=-4S", even, anticommutator(hc, s) == minus4s},
  };
}

}  // namespace oscchain
