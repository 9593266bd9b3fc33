// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/ckks/params.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hefl/common/error.h"

namespace hefl::ckks {

namespace {

lattice::SecurityLevel security_level(int bits) {
  switch (bits) {
    case 0:
      return lattice::SecurityLevel::kNone;
    case 128:
      return lattice::SecurityLevel::kClassic128;
    default:
      throw ValueError("unsupported security level " + std::to_string(bits) +
                       " (expected 128, or 0 for none)");
  }
}

}  // namespace

CkksParams CkksParams::create(const CkksConfig& config) {
  if (config.slot_count == 0 || !std::has_single_bit(config.slot_count)) {
    throw ValueError("slot count must be a power of two");
  }
  if (config.max_depth < 1) throw ValueError("multiplicative depth must be >= 1");
  if (config.scale_bits < 10 || config.scale_bits > 60) {
    throw ValueError("scale bits must lie in [10, 60]");
  }
  if (config.base_prime_bits <= config.scale_bits ||
      config.base_prime_bits > lattice::Modulus::kMaxBits - 1) {
    throw ValueError("base prime bits must exceed scale bits and stay below 61");
  }
  const std::size_t n = 2 * config.slot_count;
  const lattice::u64 two_n = 2 * n;
  auto chain = lattice::ntt_primes_above(lattice::u64{1} << config.base_prime_bits,
                                         two_n, 1);
  const auto rescale = lattice::ntt_primes_above(
      lattice::u64{1} << config.scale_bits, two_n, config.max_depth);
  chain.insert(chain.end(), rescale.begin(), rescale.end());
  auto ring = lattice::RingParams::create(n, std::move(chain),
                                          security_level(config.security_bits));
  return from_ring(std::move(ring), config.scale_bits, config.max_depth,
                   config.error_sigma, config.security_bits);
}

CkksParams CkksParams::from_ring(lattice::RingParamsPtr ring, int scale_bits,
                                 int max_depth, double error_sigma,
                                 int security_bits) {
  if (!ring) throw ValueError("null ring");
  if (max_depth < 0 ||
      static_cast<std::size_t>(max_depth) + 1 > ring->prime_count()) {
    throw ValueError("depth " + std::to_string(max_depth) +
                     " needs more rescaling primes than the chain has");
  }
  if (ring->ring_degree() < 4) throw ValueError("ring degree must be >= 4");
  if (!(error_sigma > 0)) throw ValueError("error sigma must be positive");
  security_level(security_bits);

  CkksParams p;
  p.ring_ = std::move(ring);
  p.scale_bits_ = scale_bits;
  p.max_depth_ = max_depth;
  p.security_bits_ = security_bits;
  p.error_sigma_ = error_sigma;

  auto tables = std::make_shared<EmbeddingTables>();
  const std::size_t n = p.ring_->ring_degree();
  tables->twist.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    tables->twist[k] = std::polar(1.0, std::numbers::pi * static_cast<double>(k) /
                                           static_cast<double>(n));
  }
  p.embedding_ = std::move(tables);
  return p;
}

double CkksParams::default_scale() const { return std::ldexp(1.0, scale_bits_); }

std::string CkksParams::describe() const {
  std::ostringstream os;
  os << "ring_degree = " << ring_degree() << "\n"
     << "slot_count = " << slot_count() << "\n"
     << "scale_bits = " << scale_bits_ << "\n"
     << "max_depth = " << max_depth_ << "\n"
     << "security_bits = " << security_bits_ << "\n"
     << "error_sigma = " << error_sigma_ << "\n"
     << "modulus_chain =";
  for (const auto& m : ring_->moduli()) os << " " << m.value() << "(" << m.bit_count() << "b)";
  os << "\n"
     << "total_modulus_bits = " << ring_->total_modulus_bits() << "\n";
  if (const auto bound = lattice::max_modulus_bits_128(ring_degree())) {
    os << "max_modulus_bits_128 = " << *bound << "\n";
  }
  return os.str();
}

}  // namespace hefl::ckks
