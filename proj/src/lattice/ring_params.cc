// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/lattice/ring_params.h"

#include <algorithm>
#include <bit>
#include <string>

#include "hefl/common/error.h"

namespace hefl::lattice {

std::optional<int> max_modulus_bits_128(std::size_t ring_degree) {
  switch (ring_degree) {
    case 1024:
      return 27;
    case 2048:
      return 54;
    case 4096:
      return 109;
    case 8192:
      return 218;
    case 16384:
      return 438;
    case 32768:
      return 881;
    default:
      return std::nullopt;
  }
}

std::shared_ptr<const RingParams> RingParams::create(std::size_t ring_degree,
                                                     std::vector<u64> primes,
                                                     SecurityLevel security) {
  if (ring_degree < 2 || !std::has_single_bit(ring_degree)) {
    throw ValueError("ring degree must be a power of two >= 2, got " +
                     std::to_string(ring_degree));
  }
  if (primes.empty()) throw ValueError("modulus chain is empty");

  std::shared_ptr<RingParams> params(new RingParams());
  params->ring_degree_ = ring_degree;
  params->security_ = security;

  const u64 two_n = 2 * ring_degree;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const u64 q = primes[i];
    if (!is_prime(q)) {
      throw ValueError("chain entry " + std::to_string(q) + " is not prime");
    }
    if (q % two_n != 1) {
      throw ValueError("prime " + std::to_string(q) + " is not 1 mod 2N");
    }
    if (std::find(primes.begin(), primes.begin() + i, q) !=
        primes.begin() + i) {
      throw ValueError("duplicate prime " + std::to_string(q) + " in chain");
    }
    params->moduli_.emplace_back(q);
  }

  if (security == SecurityLevel::kClassic128) {
    const auto bound = max_modulus_bits_128(ring_degree);
    if (!bound) {
      throw SecurityError("no 128-bit security entry for ring degree " +
                          std::to_string(ring_degree));
    }
    if (params->total_modulus_bits() > *bound) {
      throw SecurityError(
          "modulus chain has " + std::to_string(params->total_modulus_bits()) +
          " bits; 128-bit security at N=" + std::to_string(ring_degree) +
          " allows at most " + std::to_string(*bound));
    }
  }

  params->ntt_.reserve(primes.size());
  for (const auto& m : params->moduli_) params->ntt_.emplace_back(ring_degree, m);

  const std::size_t k = primes.size();
  params->prefix_mod_.assign(k * k, 0);
  params->prefix_inv_.assign(k, 1);
  params->inv_prime_mod_.assign(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const Modulus& qi = params->moduli_[i];
    u64 prefix = 1 % qi.value();
    for (std::size_t j = 0; j < k; ++j) {
      params->prefix_mod_[i * k + j] = prefix;
      prefix = qi.mul(prefix, qi.reduce(primes[j]));
    }
    if (i > 0) params->prefix_inv_[i] = inverse_mod(params->prefix_mod_[i * k + i], qi);
    for (std::size_t last = 0; last < k; ++last) {
      if (last != i) {
        params->inv_prime_mod_[last * k + i] = inverse_mod(qi.reduce(primes[last]), qi);
      }
    }
  }
  return params;
}

int RingParams::total_modulus_bits() const {
  int bits = 0;
  for (const auto& m : moduli_) bits += m.bit_count();
  return bits;
}

}  // namespace hefl::lattice
