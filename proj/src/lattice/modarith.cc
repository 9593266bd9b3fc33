// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/lattice/modarith.h"

#include <bit>
#include <string>

#include "hefl/common/error.h"

namespace hefl::lattice {

Modulus::Modulus(u64 value) : value_(value) {
  if (value < 2 || std::bit_width(value) > kMaxBits) {
    throw ValueError("modulus must lie in [2, 2^62), got " +
                     std::to_string(value));
  }
  bit_count_ = std::bit_width(value);
  // q is never a power of two here except q == 2, so floor((2^128 - 1) / q)
  // equals floor(2^128 / q).
  const u128 ratio = ~static_cast<u128>(0) / value;
  ratio_hi_ = static_cast<u64>(ratio >> 64);
  ratio_lo_ = static_cast<u64>(ratio);
}

u64 Modulus::from_signed(std::int64_t x) const {
  if (x >= 0) return reduce(static_cast<u64>(x));
  const u64 magnitude = reduce(static_cast<u64>(-(x + 1)) + 1);
  return negate(magnitude);
}

u64 Modulus::from_signed(__int128 x) const {
  if (x >= 0) return reduce(static_cast<u128>(x));
  const u128 magnitude = static_cast<u128>(-(x + 1)) + 1;
  return negate(reduce(magnitude));
}

u64 pow_mod(u64 base, u64 exponent, const Modulus& q) {
  u64 result = 1 % q.value();
  base = q.reduce(base);
  while (exponent > 0) {
    if (exponent & 1) result = q.mul(result, base);
    base = q.mul(base, base);
    exponent >>= 1;
  }
  return result;
}

u64 inverse_mod(u64 a, const Modulus& q) {
  a = q.reduce(a);
  if (a == 0) throw ValueError("zero has no modular inverse");
  return pow_mod(a, q.value() - 2, q);
}

namespace {

u64 pow_mod_u128(u64 base, u64 exponent, u64 n) {
  u64 result = 1;
  base %= n;
  while (exponent > 0) {
    if (exponent & 1) result = static_cast<u64>(static_cast<u128>(result) * base % n);
    base = static_cast<u64>(static_cast<u128>(base) * base % n);
    exponent >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kSmall) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a proven deterministic witness set below 3.3e24.
  for (u64 a : kSmall) {
    u64 x = pow_mod_u128(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<u64>(static_cast<u128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> ntt_primes_above(u64 lower_bound, u64 two_n, int count) {
  if (two_n == 0 || !std::has_single_bit(two_n)) {
    throw ValueError("2N must be a power of two");
  }
  std::vector<u64> primes;
  u64 candidate = (lower_bound / two_n + 1) * two_n + 1;
  while (static_cast<int>(primes.size()) < count) {
    if (std::bit_width(candidate) > Modulus::kMaxBits) {
      throw ValueError("no NTT-friendly prime below 2^62 above the bound");
    }
    if (is_prime(candidate)) primes.push_back(candidate);
    candidate += two_n;
  }
  return primes;
}

u64 primitive_root_of_unity(u64 two_n, const Modulus& q) {
  const u64 p = q.value();
  if ((p - 1) % two_n != 0) {
    throw ValueError("modulus " + std::to_string(p) + " is not 1 mod " +
                     std::to_string(two_n));
  }
  const u64 cofactor = (p - 1) / two_n;
  // For two_n a power of two, psi^(two_n/2) == -1 forces order exactly two_n.
  for (u64 x = 2; x < p; ++x) {
    const u64 psi = pow_mod(x, cofactor, q);
    if (pow_mod(psi, two_n / 2, q) == p - 1) return psi;
  }
  throw ValueError("no primitive root of unity found");
}

}  // namespace hefl::lattice
