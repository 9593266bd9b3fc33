// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_CKKS_PARAMS_H_
#define HEFL_CKKS_PARAMS_H_

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "hefl/lattice/ring_params.h"
#include "hefl/lattice/sampling.h"

namespace hefl::ckks {

// User-facing knobs. Defaults are the production parameter set: depth 2,
// 52-bit scale, 8192 slots, 128-bit security.
struct CkksConfig {
  std::size_t slot_count = 8192;
  int scale_bits = 52;
  int max_depth = 2;
  int base_prime_bits = 60;
  int security_bits = 128;  // 0 disables the security table check
  double error_sigma = lattice::kDefaultErrorSigma;
};

// Powers of the primitive 2N-th complex root of unity used by the canonical
// embedding.
struct EmbeddingTables {
  std::vector<std::complex<double>> twist;  // exp(i*pi*k/N)
};

class CkksParams {
 public:
  // Chain: one base prime just above 2^base_prime_bits, then max_depth
  // rescaling primes just above 2^scale_bits, all 1 mod 2N.
  static CkksParams create(const CkksConfig& config = {});

  // Explicit ring, for toy parameter sets. The chain must have at least
  // max_depth + 1 primes.
  static CkksParams from_ring(lattice::RingParamsPtr ring, int scale_bits,
                              int max_depth, double error_sigma,
                              int security_bits);

  const lattice::RingParamsPtr& ring() const { return ring_; }
  std::size_t ring_degree() const { return ring_->ring_degree(); }
  std::size_t slot_count() const { return ring_->ring_degree() / 2; }
  int scale_bits() const { return scale_bits_; }
  double default_scale() const;
  int max_depth() const { return max_depth_; }
  int security_bits() const { return security_bits_; }
  double error_sigma() const { return error_sigma_; }
  std::size_t top_level() const { return ring_->prime_count() - 1; }
  const EmbeddingTables& embedding() const { return *embedding_; }

  // Multi-line human readable dump (used by --validate-only).
  std::string describe() const;

  friend bool operator==(const CkksParams& a, const CkksParams& b) {
    return a.ring_ == b.ring_ && a.scale_bits_ == b.scale_bits_ &&
           a.max_depth_ == b.max_depth_;
  }

 private:
  lattice::RingParamsPtr ring_;
  int scale_bits_ = 0;
  int max_depth_ = 0;
  int security_bits_ = 0;
  double error_sigma_ = lattice::kDefaultErrorSigma;
  std::shared_ptr<const EmbeddingTables> embedding_;
};

}  // namespace hefl::ckks

#endif  // HEFL_CKKS_PARAMS_H_
