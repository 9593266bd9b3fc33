// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_LATTICE_SAMPLING_H_
#define HEFL_LATTICE_SAMPLING_H_

#include <cstdint>
#include <vector>

#include "hefl/lattice/prng.h"
#include "hefl/lattice/rns_polynomial.h"

namespace hefl::lattice {

inline constexpr double kDefaultErrorSigma = 3.19;
inline constexpr double kTailCutSigmas = 6.0;

// Centered discrete Gaussian over [-floor(6 sigma), floor(6 sigma)] by
// cumulative table lookup.
class DiscreteGaussian {
 public:
  explicit DiscreteGaussian(double sigma);

  double sigma() const { return sigma_; }
  std::int64_t bound() const { return bound_; }
  std::int64_t operator()(Prng& rng) const;

 private:
  double sigma_;
  std::int64_t bound_;
  std::vector<std::uint64_t> cumulative_;  // P(X <= -bound + i) * 2^64
};

// Coefficients uniform in {-1, 0, 1}, coefficient domain, all residues.
RnsPolynomial sample_ternary_secret(const RingParamsPtr& params, Prng& rng);
std::vector<std::int64_t> sample_ternary(std::size_t count, Prng& rng);

// Discrete Gaussian coefficients, coefficient domain, all residues.
RnsPolynomial sample_gaussian_error(const RingParamsPtr& params, Prng& rng,
                                    double sigma);

// Uniform residues; the distribution is the same in either domain, so the
// caller picks the domain tag.
RnsPolynomial sample_uniform(const RingParamsPtr& params,
                             std::size_t residue_count, Domain domain, Prng& rng);

}  // namespace hefl::lattice

#endif  // HEFL_LATTICE_SAMPLING_H_
