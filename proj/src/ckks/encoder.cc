// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/ckks/encoder.h"

#include <cmath>
#include <complex>
#include <string>
#include <unsupported/Eigen/FFT>
#include <vector>

#include "hefl/common/error.h"

namespace hefl::ckks {

namespace {

using Complex = std::complex<double>;

// Eigen::FFT caches plans internally and is not safe to share across threads.
Eigen::FFT<double>& thread_fft() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

}  // namespace

Plaintext encode(std::span<const double> values, const CkksParams& params,
                 double scale, std::size_t level) {
  const std::size_t n = params.ring_degree();
  const std::size_t slots = params.slot_count();
  if (values.size() > slots) {
    throw CapacityError("cannot encode " + std::to_string(values.size()) +
                        " values into " + std::to_string(slots) + " slots");
  }
  if (level > params.top_level()) {
    throw LevelMismatch("encode level " + std::to_string(level) +
                        " above top level " + std::to_string(params.top_level()));
  }
  if (!(scale > 0) || !std::isfinite(scale)) {
    throw ValueError("encoding scale must be positive and finite");
  }
  std::vector<Complex> spread(n, Complex(0, 0));
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double v = values[j];
    if (!std::isfinite(v)) {
      throw ValueError("non-finite value at slot " + std::to_string(j));
    }
    if (std::abs(v) > kMaxEncodableMagnitude) {
      throw ValueError("value at slot " + std::to_string(j) +
                       " exceeds the encodable range 2^20");
    }
    spread[j] = v;
    spread[n - 1 - j] = v;
  }

  std::vector<Complex> spectrum;
  thread_fft().fwd(spectrum, spread);

  const auto& twist = params.embedding().twist;
  const double inv_n = 1.0 / static_cast<double>(n);
  // |m_k| <= max |value|, so scaled coefficients stay far below 2^126.
  constexpr double kInt64Limit = 9.2233720368547758e18;  // 2^63
  lattice::RnsPolynomial poly(params.ring(), level + 1,
                              lattice::Domain::kCoefficient);
  for (std::size_t k = 0; k < n; ++k) {
    const double m = (std::conj(twist[k]) * spectrum[k]).real() * inv_n;
    const double c = std::nearbyint(m * scale);
    if (!std::isfinite(c) || std::abs(c) >= std::ldexp(1.0, 126)) {
      throw ValueError("scaled coefficient out of range; reduce scale or values");
    }
    if (std::abs(c) < kInt64Limit) {
      const auto ci = static_cast<std::int64_t>(c);
      for (std::size_t i = 0; i <= level; ++i) {
        poly.residue(i)[k] = params.ring()->modulus(i).from_signed(ci);
      }
    } else {
      const auto ci = static_cast<__int128>(c);
      for (std::size_t i = 0; i <= level; ++i) {
        poly.residue(i)[k] = params.ring()->modulus(i).from_signed(ci);
      }
    }
  }
  lattice::ntt_forward_inplace(poly);
  return Plaintext{std::move(poly), scale};
}

Plaintext encode(std::span<const double> values, const CkksParams& params) {
  return encode(values, params, params.default_scale(), params.top_level());
}

Eigen::VectorXd decode(const Plaintext& plaintext, const CkksParams& params) {
  const std::size_t n = params.ring_degree();
  const std::size_t slots = params.slot_count();
  const Eigen::VectorXd coeffs =
      lattice::centered_coefficients(lattice::ntt_inverse(plaintext.poly));

  const auto& twist = params.embedding().twist;
  std::vector<Complex> twisted(n);
  for (std::size_t k = 0; k < n; ++k) {
    twisted[k] = coeffs[static_cast<Eigen::Index>(k)] * twist[k];
  }
  std::vector<Complex> evaluations;
  thread_fft().inv(evaluations, twisted);  // scaled by 1/N

  const double factor = static_cast<double>(n) / plaintext.scale;
  Eigen::VectorXd out(static_cast<Eigen::Index>(slots));
  for (std::size_t j = 0; j < slots; ++j) {
    out[static_cast<Eigen::Index>(j)] = evaluations[j].real() * factor;
  }
  return out;
}

}  // namespace hefl::ckks
