// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_WIRE_SERIALIZE_H_
#define HEFL_WIRE_SERIALIZE_H_

#include <cstddef>

#include "hefl/ckks/params.h"
#include "hefl/ckks/types.h"
#include "hefl/pack/layout.h"
#include "hefl/pack/model.h"
#include "hefl/pack/packed_model.h"
#include "hefl/wire/bytes.h"

// Byte formats (all integers little-endian):
//
//   ciphertext: ring_degree u64 | residue_count u32 | level u32 | scale f64 |
//               slot_count u64 | c0 residues | c1 residues
//               (each residue: ring_degree u64 words, evaluation domain)
//   public key: ring_degree u64 | prime_count u32 | primes u64... |
//               scale_bits u32 | max_depth u32 | b residues | a residues
//   layout:     slots u64 | array_count u32 | (name str | rows u64 | cols u64)...
//   model:      kind u8 (0 encrypted, 1 plain) | layout |
//               encrypted: count u32 | ciphertext...   plain: total f64 values
//
// Secret keys have no byte encoding.

namespace hefl::wire {

inline constexpr std::size_t kCiphertextHeaderBytes = 32;

std::size_t ciphertext_bytes(std::size_t ring_degree, std::size_t residue_count);

void write_ciphertext(ByteWriter& out, const ckks::Ciphertext& ct);
ckks::Ciphertext read_ciphertext(ByteReader& in, const ckks::CkksParams& params);
Bytes serialize_ciphertext(const ckks::Ciphertext& ct);
ckks::Ciphertext deserialize_ciphertext(std::span<const std::uint8_t> bytes,
                                        const ckks::CkksParams& params);

Bytes serialize_public_key(const ckks::PublicKey& pk);
ckks::PublicKey deserialize_public_key(std::span<const std::uint8_t> bytes,
                                       const ckks::CkksParams& params);

void write_layout(ByteWriter& out, const pack::ModelLayout& layout);
pack::ModelLayout read_layout(ByteReader& in);
Bytes serialize_layout(const pack::ModelLayout& layout);
pack::ModelLayout deserialize_layout(std::span<const std::uint8_t> bytes);

// A model payload: either encrypted or plain, tagged.
enum class ModelKind : std::uint8_t { kEncrypted = 0, kPlain = 1 };

Bytes serialize_packed_model(const pack::PackedModel& model);
Bytes serialize_plain_model(const pack::Model& model);
ModelKind model_kind(std::span<const std::uint8_t> bytes);
pack::PackedModel deserialize_packed_model(std::span<const std::uint8_t> bytes,
                                           const ckks::CkksParams& params);
pack::Model deserialize_plain_model(std::span<const std::uint8_t> bytes);

}  // namespace hefl::wire

#endif  // HEFL_WIRE_SERIALIZE_H_
