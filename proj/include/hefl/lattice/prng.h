// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_LATTICE_PRNG_H_
#define HEFL_LATTICE_PRNG_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace hefl::lattice {

// Seeded ChaCha20 keystream generator (libsodium). Satisfies
// std::uniform_random_bit_generator. Not thread-safe; each thread or task
// owns its own instance.
class Prng {
 public:
  using result_type = std::uint64_t;

  explicit Prng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Draws a fresh 64-bit seed for a child generator.
  std::uint64_t fork_seed() { return (*this)(); }

 private:
  void refill();

  std::array<unsigned char, 32> key_{};
  std::uint64_t block_counter_ = 0;
  std::array<std::uint64_t, 512> buffer_{};
  std::size_t position_ = buffer_.size();
};

}  // namespace hefl::lattice

#endif  // HEFL_LATTICE_PRNG_H_
