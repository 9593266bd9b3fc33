// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_LATTICE_MODARITH_H_
#define HEFL_LATTICE_MODARITH_H_

#include <cstdint>
#include <vector>

namespace hefl::lattice {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Word-sized prime modulus with a precomputed Barrett constant floor(2^128/q).
// Values are kept below 2^62 so that lazy sums of two residues never wrap.
class Modulus {
 public:
  static constexpr int kMaxBits = 62;

  explicit Modulus(u64 value);

  u64 value() const { return value_; }
  int bit_count() const { return bit_count_; }

  // x mod q for any 128-bit x.
  u64 reduce(u128 x) const {
    const u64 lo = static_cast<u64>(x);
    const u64 hi = static_cast<u64>(x >> 64);
    const u128 lo_lo = (static_cast<u128>(lo) * ratio_lo_) >> 64;
    const u128 lo_hi = static_cast<u128>(lo) * ratio_hi_;
    const u128 hi_lo = static_cast<u128>(hi) * ratio_lo_;
    const u128 mid = lo_lo + static_cast<u64>(lo_hi) + static_cast<u64>(hi_lo);
    const u64 quotient = hi * ratio_hi_ + static_cast<u64>(lo_hi >> 64) +
                         static_cast<u64>(hi_lo >> 64) +
                         static_cast<u64>(mid >> 64);
    u64 r = lo - quotient * value_;
    // The quotient estimate is short by at most two.
    if (r >= value_) r -= value_;
    if (r >= value_) r -= value_;
    return r;
  }

  u64 reduce_u64(u64 x) const { return reduce(x); }

  u64 add(u64 a, u64 b) const {
    const u64 s = a + b;
    return s >= value_ ? s - value_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + value_ - b; }
  u64 negate(u64 a) const { return a == 0 ? 0 : value_ - a; }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }

  // Signed integer to its residue in [0, q).
  u64 from_signed(std::int64_t x) const;
  u64 from_signed(__int128 x) const;

 private:
  u64 value_;
  int bit_count_;
  u64 ratio_hi_;
  u64 ratio_lo_;
};

// Precomputed multiplicand for Shoup's constant multiplication.
struct ShoupConstant {
  u64 operand = 0;
  u64 quotient = 0;  // floor(operand * 2^64 / q)

  ShoupConstant() = default;
  ShoupConstant(u64 w, u64 q)
      : operand(w),
        quotient(static_cast<u64>((static_cast<u128>(w) << 64) / q)) {}
};

// x * w mod q with the result in [0, q).
inline u64 mul_shoup(u64 x, const ShoupConstant& w, u64 q) {
  const u64 hi = static_cast<u64>((static_cast<u128>(x) * w.quotient) >> 64);
  const u64 r = x * w.operand - hi * q;
  return r >= q ? r - q : r;
}

u64 pow_mod(u64 base, u64 exponent, const Modulus& q);
u64 inverse_mod(u64 a, const Modulus& q);  // q prime, a != 0

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

// Primes p ≡ 1 (mod two_n), scanning upward from just above `lower_bound`.
std::vector<u64> ntt_primes_above(u64 lower_bound, u64 two_n, int count);

// Element of multiplicative order exactly two_n (two_n a power of two).
u64 primitive_root_of_unity(u64 two_n, const Modulus& q);

}  // namespace hefl::lattice

#endif  // HEFL_LATTICE_MODARITH_H_
