// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_CKKS_TYPES_H_
#define HEFL_CKKS_TYPES_H_

#include <cstddef>

#include "hefl/ckks/params.h"
#include "hefl/lattice/rns_polynomial.h"

namespace hefl::ckks {

// Encoded message. The polynomial is kept in the evaluation domain.
struct Plaintext {
  lattice::RnsPolynomial poly;
  double scale;

  std::size_t level() const { return poly.level(); }
};

// RLWE ciphertext (c0, c1), both components in the evaluation domain.
// Decrypts as c0 + c1 * s. Scale and level are bookkeeping carried with every
// operation, never re-derived.
struct Ciphertext {
  lattice::RnsPolynomial c0;
  lattice::RnsPolynomial c1;
  double scale;
  std::size_t slot_count;

  std::size_t level() const { return c0.level(); }

  friend bool operator==(const Ciphertext& a, const Ciphertext& b) {
    return a.c0 == b.c0 && a.c1 == b.c1 && a.scale == b.scale &&
           a.slot_count == b.slot_count;
  }
};

// Public key (b, a) with b = -a*s + e, evaluation domain, top level.
struct PublicKey {
  CkksParams params;
  lattice::RnsPolynomial b;
  lattice::RnsPolynomial a;
};

class SecretKey;
struct KeyPair;

}  // namespace hefl::ckks

#endif  // HEFL_CKKS_TYPES_H_
