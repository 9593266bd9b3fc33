// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/lattice/sampling.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "hefl/common/error.h"

namespace hefl::lattice {

DiscreteGaussian::DiscreteGaussian(double sigma) : sigma_(sigma) {
  if (!(sigma > 0) || !std::isfinite(sigma)) {
    throw ValueError("gaussian sigma must be positive and finite");
  }
  bound_ = static_cast<std::int64_t>(std::floor(kTailCutSigmas * sigma));
  std::vector<long double> weight;
  long double total = 0;
  for (std::int64_t x = -bound_; x <= bound_; ++x) {
    const long double y = static_cast<long double>(x) / sigma;
    weight.push_back(std::exp(-y * y / 2));
    total += weight.back();
  }
  long double running = 0;
  for (long double w : weight) {
    running += w / total;
    const long double scaled = std::ldexp(running, 64);
    cumulative_.push_back(scaled >= std::ldexp(1.0L, 64)
                              ? std::numeric_limits<std::uint64_t>::max()
                              : static_cast<std::uint64_t>(scaled));
  }
  cumulative_.back() = std::numeric_limits<std::uint64_t>::max();
}

std::int64_t DiscreteGaussian::operator()(Prng& rng) const {
  const std::uint64_t u = rng();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) return bound_;
  return -bound_ + static_cast<std::int64_t>(it - cumulative_.begin());
}

std::vector<std::int64_t> sample_ternary(std::size_t count, Prng& rng) {
  // Largest multiple of 3 below 2^64; rejecting above it removes mod bias.
  constexpr std::uint64_t kLimit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % 3;
  std::vector<std::int64_t> out(count);
  for (auto& c : out) {
    std::uint64_t u;
    do {
      u = rng();
    } while (u >= kLimit);
    c = static_cast<std::int64_t>(u % 3) - 1;
  }
  return out;
}

RnsPolynomial sample_ternary_secret(const RingParamsPtr& params, Prng& rng) {
  const auto coeffs = sample_ternary(params->ring_degree(), rng);
  return RnsPolynomial::from_signed(params, params->prime_count(), coeffs);
}

RnsPolynomial sample_gaussian_error(const RingParamsPtr& params, Prng& rng,
                                    double sigma) {
  const DiscreteGaussian gaussian(sigma);
  std::vector<std::int64_t> coeffs(params->ring_degree());
  for (auto& c : coeffs) c = gaussian(rng);
  return RnsPolynomial::from_signed(params, params->prime_count(), coeffs);
}

RnsPolynomial sample_uniform(const RingParamsPtr& params,
                             std::size_t residue_count, Domain domain,
                             Prng& rng) {
  RnsPolynomial out(params, residue_count, domain);
  for (std::size_t i = 0; i < residue_count; ++i) {
    const u64 q = params->modulus(i).value();
    const u64 mask = (u64{1} << std::bit_width(q)) - 1;
    for (auto& v : out.residue(i)) {
      u64 u;
      do {
        u = rng() & mask;
      } while (u >= q);
      v = u;
    }
  }
  return out;
}

}  // namespace hefl::lattice
