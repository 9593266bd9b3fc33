// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_PACK_PACKED_MODEL_H_
#define HEFL_PACK_PACKED_MODEL_H_

#include <cstddef>
#include <vector>

#include "hefl/ckks/scheme.h"
#include "hefl/lattice/prng.h"
#include "hefl/pack/layout.h"

namespace hefl::pack {

// An encrypted model: the flattened parameters cut into slot-sized chunks,
// one ciphertext per chunk, tail zero padded.
struct PackedModel {
  ModelLayout layout;
  std::vector<ckks::Ciphertext> ciphertexts;

  std::size_t level() const { return ciphertexts.front().level(); }
  double scale() const { return ciphertexts.front().scale; }

  // Throws ShapeMismatch / LevelMismatch / ScaleMismatch when the invariants
  // (count matches layout, common level and scale) do not hold.
  void validate() const;

  friend bool operator==(const PackedModel&, const PackedModel&) = default;
};

// Chunk seeds are drawn from `rng` up front, so chunks may be encrypted on
// `workers` threads with the same result as a serial run.
PackedModel encrypt_model(const Model& model, const ckks::PublicKey& pk,
                          lattice::Prng& rng, std::size_t workers = 1);

Model decrypt_model(const PackedModel& packed, const ckks::SecretKey& sk,
                    std::size_t workers = 1);

}  // namespace hefl::pack

#endif  // HEFL_PACK_PACKED_MODEL_H_
