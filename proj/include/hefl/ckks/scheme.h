// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_CKKS_SCHEME_H_
#define HEFL_CKKS_SCHEME_H_

#include "hefl/ckks/params.h"
#include "hefl/ckks/types.h"
#include "hefl/lattice/prng.h"

namespace hefl::ckks {

// Relative tolerance under which two ciphertext scales count as equal.
inline constexpr double kScaleTolerance = 0x1p-40;

class SecretKey {
 public:
  SecretKey(const SecretKey&) = default;
  SecretKey& operator=(const SecretKey&) = default;
  SecretKey(SecretKey&&) = default;
  SecretKey& operator=(SecretKey&&) = default;

  const CkksParams& params() const { return params_; }

 private:
  friend KeyPair keygen(const CkksParams& params, lattice::Prng& rng);
  friend Plaintext decrypt(const SecretKey& sk, const Ciphertext& ct);
  friend lattice::RnsPolynomial public_key_residual(const PublicKey& pk,
                                                    const SecretKey& sk);

  SecretKey(CkksParams params, lattice::RnsPolynomial s)
      : params_(std::move(params)), s_(std::move(s)) {}

  CkksParams params_;
  lattice::RnsPolynomial s_;  // ternary, evaluation domain, all residues
};

struct KeyPair {
  PublicKey public_key;
  SecretKey secret_key;
};

// s ternary, a uniform, e ~ discrete Gaussian; pk = (-a*s + e, a).
KeyPair keygen(const CkksParams& params, lattice::Prng& rng);

// b + a*s in the coefficient domain, i.e. the key error e. For diagnostics.
lattice::RnsPolynomial public_key_residual(const PublicKey& pk, const SecretKey& sk);

// (v*b + e0 + m, v*a + e1) with fresh ternary v and Gaussian e0, e1.
// The plaintext must sit at the top level.
Ciphertext encrypt(const PublicKey& pk, const Plaintext& pt, lattice::Prng& rng);

// c0 + c1*s. Counted by the decrypt audit under the caller's Party.
Plaintext decrypt(const SecretKey& sk, const Ciphertext& ct);

// Slotwise sum. Throws LevelMismatch / ScaleMismatch.
Ciphertext add_ct(const Ciphertext& a, const Ciphertext& b);
void add_ct_inplace(Ciphertext& acc, const Ciphertext& b);

// Slotwise product with a public plaintext; scale multiplies. Throws
// LevelMismatch when levels differ and LevelExhausted at level 0, where no
// rescale could follow.
Ciphertext mul_plain(const Ciphertext& ct, const Plaintext& pt);

// Divides by the last prime: drops one level, scale /= q_level.
Ciphertext rescale(const Ciphertext& ct);

// Discards residues above `level` without dividing: the message and scale are
// unchanged, only the modulus shrinks.
Ciphertext drop_to_level(const Ciphertext& ct, std::size_t level);

}  // namespace hefl::ckks

#endif  // HEFL_CKKS_SCHEME_H_
