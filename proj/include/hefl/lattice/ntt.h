// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_LATTICE_NTT_H_
#define HEFL_LATTICE_NTT_H_

#include <cstddef>
#include <span>
#include <vector>

#include "hefl/lattice/modarith.h"

namespace hefl::lattice {

// Twiddle tables for the negacyclic NTT of length N modulo one prime.
// Forward is Cooley-Tukey with bit-reversed powers of a primitive 2N-th root
// psi; the output slot i holds a(psi^(2*bitrev(i)+1)). Inverse is
// Gentleman-Sande and undoes forward exactly.
class NttTables {
 public:
  NttTables(std::size_t ring_degree, const Modulus& modulus);

  std::size_t ring_degree() const { return ring_degree_; }
  const Modulus& modulus() const { return modulus_; }
  u64 root() const { return root_; }

  void forward(std::span<u64> values) const;
  void inverse(std::span<u64> values) const;

 private:
  std::size_t ring_degree_;
  Modulus modulus_;
  u64 root_;
  std::vector<ShoupConstant> root_powers_;      // psi^bitrev(i)
  std::vector<ShoupConstant> inv_root_powers_;  // psi^-bitrev(i)
  ShoupConstant inv_degree_;
};

}  // namespace hefl::lattice

#endif  // HEFL_LATTICE_NTT_H_
