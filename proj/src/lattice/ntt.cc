// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/lattice/ntt.h"

#include <bit>

#include "hefl/common/error.h"

namespace hefl::lattice {

namespace {

std::size_t reverse_bits(std::size_t x, int bits) {
  std::size_t r = 0;
  for (int i = 0; i < bits; ++i) {
    r = (r << 1) | (x & 1);
    x >>= 1;
  }
  return r;
}

}  // namespace

NttTables::NttTables(std::size_t ring_degree, const Modulus& modulus)
    : ring_degree_(ring_degree), modulus_(modulus) {
  if (ring_degree < 2 || !std::has_single_bit(ring_degree)) {
    throw ValueError("ring degree must be a power of two >= 2");
  }
  const u64 q = modulus.value();
  root_ = primitive_root_of_unity(2 * ring_degree, modulus);
  const u64 inv_root = inverse_mod(root_, modulus);
  const int log_n = std::countr_zero(ring_degree);

  root_powers_.resize(ring_degree);
  inv_root_powers_.resize(ring_degree);
  u64 power = 1;
  u64 inv_power = 1;
  for (std::size_t i = 0; i < ring_degree; ++i) {
    const std::size_t r = reverse_bits(i, log_n);
    root_powers_[r] = ShoupConstant(power, q);
    inv_root_powers_[r] = ShoupConstant(inv_power, q);
    power = modulus.mul(power, root_);
    inv_power = modulus.mul(inv_power, inv_root);
  }
  inv_degree_ = ShoupConstant(inverse_mod(ring_degree % q, modulus), q);
}

// Harvey butterflies: values stay in [0, 4q) between stages, which needs
// q < 2^62, and are fully reduced once at the end.
void NttTables::forward(std::span<u64> a) const {
  const u64 q = modulus_.value();
  const u64 two_q = 2 * q;
  const std::size_t n = ring_degree_;
  std::size_t t = n;
  for (std::size_t m = 1; m < n; m <<= 1) {
    t >>= 1;
    for (std::size_t i = 0; i < m; ++i) {
      // Locals: stores through x and y could otherwise alias the table.
      const u64 w = root_powers_[m + i].operand;
      const u64 wq = root_powers_[m + i].quotient;
      u64* x = a.data() + 2 * i * t;
      u64* y = x + t;
      for (std::size_t j = 0; j < t; ++j) {
        u64 u = x[j];
        u -= u >= two_q ? two_q : 0;
        const u64 hi = static_cast<u64>((static_cast<u128>(y[j]) * wq) >> 64);
        const u64 v = y[j] * w - hi * q;
        x[j] = u + v;
        y[j] = u - v + two_q;
      }
    }
  }
  for (auto& c : a) {
    c -= c >= two_q ? two_q : 0;
    c -= c >= q ? q : 0;
  }
}

void NttTables::inverse(std::span<u64> a) const {
  const u64 q = modulus_.value();
  const u64 two_q = 2 * q;
  const std::size_t n = ring_degree_;
  std::size_t t = 1;
  for (std::size_t m = n; m > 1; m >>= 1) {
    const std::size_t h = m >> 1;
    for (std::size_t i = 0; i < h; ++i) {
      const u64 w = inv_root_powers_[h + i].operand;
      const u64 wq = inv_root_powers_[h + i].quotient;
      u64* x = a.data() + 2 * i * t;
      u64* y = x + t;
      for (std::size_t j = 0; j < t; ++j) {
        const u64 u = x[j];
        const u64 v = y[j];
        u64 s = u + v;
        s -= s >= two_q ? two_q : 0;
        x[j] = s;
        const u64 d = u - v + two_q;
        const u64 hi = static_cast<u64>((static_cast<u128>(d) * wq) >> 64);
        y[j] = d * w - hi * q;
      }
    }
    t <<= 1;
  }
  const ShoupConstant inv_n = inv_degree_;
  for (auto& c : a) c = mul_shoup(c, inv_n, q);
}

}  // namespace hefl::lattice
