// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/lattice/prng.h"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

namespace hefl::lattice {

Prng::Prng(std::uint64_t seed) {
  if (sodium_init() < 0) throw std::runtime_error("libsodium failed to initialize");
  unsigned char seed_bytes[8];
  for (int i = 0; i < 8; ++i) seed_bytes[i] = static_cast<unsigned char>(seed >> (8 * i));
  crypto_generichash(key_.data(), key_.size(), seed_bytes, sizeof(seed_bytes),
                     nullptr, 0);
}

Prng::result_type Prng::operator()() {
  if (position_ == buffer_.size()) refill();
  return buffer_[position_++];
}

void Prng::refill() {
  unsigned char nonce[crypto_stream_chacha20_ietf_NONCEBYTES] = {};
  for (int i = 0; i < 8; ++i) {
    nonce[i] = static_cast<unsigned char>(block_counter_ >> (8 * i));
  }
  ++block_counter_;
  unsigned char bytes[sizeof(buffer_)];
  crypto_stream_chacha20_ietf(bytes, sizeof(bytes), nonce, key_.data());
  // Little-endian decode keeps streams identical across hosts.
  for (std::size_t i = 0; i < buffer_.size(); ++i) {
    std::uint64_t v = 0;
    for (int b = 7; b >= 0; --b) v = (v << 8) | bytes[8 * i + b];
    buffer_[i] = v;
  }
  position_ = 0;
}

}  // namespace hefl::lattice
