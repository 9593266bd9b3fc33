// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_LATTICE_RING_PARAMS_H_
#define HEFL_LATTICE_RING_PARAMS_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "hefl/lattice/modarith.h"
#include "hefl/lattice/ntt.h"

namespace hefl::lattice {

enum class SecurityLevel {
  kNone,     // toy rings for tests; no bound is enforced
  kClassic128,
};

// Largest total modulus bit count that keeps RLWE with a ternary secret at
// 128-bit classical security for the given ring degree (HE standard table).
// Empty for degrees the table does not cover.
std::optional<int> max_modulus_bits_128(std::size_t ring_degree);

// The ring Z_Q[X]/(X^N + 1) with Q = q_0 * ... * q_L held in RNS form.
// Immutable once built; share it through std::shared_ptr.
class RingParams {
 public:
  // Throws ValueError for malformed chains and SecurityError when the chain
  // exceeds the security table bound for `ring_degree`.
  static std::shared_ptr<const RingParams> create(std::size_t ring_degree,
                                                  std::vector<u64> primes,
                                                  SecurityLevel security);

  std::size_t ring_degree() const { return ring_degree_; }
  std::size_t prime_count() const { return moduli_.size(); }
  const Modulus& modulus(std::size_t i) const { return moduli_[i]; }
  const std::vector<Modulus>& moduli() const { return moduli_; }
  const NttTables& ntt(std::size_t i) const { return ntt_[i]; }
  SecurityLevel security() const { return security_; }
  int total_modulus_bits() const;

  // Garner constants for lifting residues over the first `count` primes:
  // prefix_mod(i, j) = (q_0 * ... * q_{j-1}) mod q_i, prefix_inv(i) =
  // (q_0 * ... * q_{i-1})^-1 mod q_i.
  u64 prefix_mod(std::size_t i, std::size_t j) const {
    return prefix_mod_[i * moduli_.size() + j];
  }
  u64 prefix_inv(std::size_t i) const { return prefix_inv_[i]; }

  // q_last^-1 mod q_i, used when dropping prime `last`.
  u64 inv_prime_mod(std::size_t last, std::size_t i) const {
    return inv_prime_mod_[last * moduli_.size() + i];
  }

 private:
  RingParams() = default;

  std::size_t ring_degree_ = 0;
  std::vector<Modulus> moduli_;
  std::vector<NttTables> ntt_;
  SecurityLevel security_ = SecurityLevel::kNone;
  std::vector<u64> prefix_mod_;
  std::vector<u64> prefix_inv_;
  std::vector<u64> inv_prime_mod_;
};

using RingParamsPtr = std::shared_ptr<const RingParams>;

}  // namespace hefl::lattice

#endif  // HEFL_LATTICE_RING_PARAMS_H_
