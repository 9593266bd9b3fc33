// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_CKKS_ENCODER_H_
#define HEFL_CKKS_ENCODER_H_

#include <Eigen/Core>
#include <cstddef>
#include <span>

#include "hefl/ckks/params.h"
#include "hefl/ckks/types.h"

namespace hefl::ckks {

// Largest accepted |value| for encoding.
inline constexpr double kMaxEncodableMagnitude = 1048576.0;  // 2^20

// Canonical-embedding encoder for real vectors. Slot j is the evaluation of
// the message polynomial at zeta^(2j+1), zeta = exp(i*pi/N); the conjugate
// roots carry the mirrored values so the polynomial has real coefficients.
//
// Values shorter than slot_count are zero padded. The coefficients are
// round(scale * m) reduced into the residues of the first level + 1 primes.
//
// Throws CapacityError when values.size() > slot_count, ValueError for
// non-finite values or |value| > 2^20.
Plaintext encode(std::span<const double> values, const CkksParams& params,
                 double scale, std::size_t level);

// Encodes at the default scale 2^scale_bits and the top level.
Plaintext encode(std::span<const double> values, const CkksParams& params);

// Forward embedding of the plaintext divided by its scale; slot_count reals.
Eigen::VectorXd decode(const Plaintext& plaintext, const CkksParams& params);

}  // namespace hefl::ckks

#endif  // HEFL_CKKS_ENCODER_H_
