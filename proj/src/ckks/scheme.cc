// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/ckks/scheme.h"

#include <cmath>
#include <string>

#include "hefl/ckks/audit.h"
#include "hefl/common/error.h"
#include "hefl/lattice/sampling.h"

namespace hefl::ckks {

using lattice::Domain;
using lattice::RnsPolynomial;

namespace {

RnsPolynomial to_evaluation(RnsPolynomial p) {
  lattice::ntt_forward_inplace(p);
  return p;
}

void require_same_level(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw LevelMismatch(std::string(op) + ": level " + std::to_string(a) +
                        " vs " + std::to_string(b));
  }
}

}  // namespace

KeyPair keygen(const CkksParams& params, lattice::Prng& rng) {
  const auto& ring = params.ring();
  RnsPolynomial s = to_evaluation(lattice::sample_ternary_secret(ring, rng));
  RnsPolynomial a =
      lattice::sample_uniform(ring, ring->prime_count(), Domain::kEvaluation, rng);
  RnsPolynomial e =
      to_evaluation(lattice::sample_gaussian_error(ring, rng, params.error_sigma()));
  RnsPolynomial b = lattice::ring_sub(e, lattice::ring_mul(a, s));
  return KeyPair{PublicKey{params, std::move(b), std::move(a)},
                 SecretKey(params, std::move(s))};
}

RnsPolynomial public_key_residual(const PublicKey& pk, const SecretKey& sk) {
  return lattice::ntt_inverse(lattice::ring_add(pk.b, lattice::ring_mul(pk.a, sk.s_)));
}

Ciphertext encrypt(const PublicKey& pk, const Plaintext& pt, lattice::Prng& rng) {
  const CkksParams& params = pk.params;
  if (pt.level() != params.top_level()) {
    throw LevelMismatch("encrypt expects a top-level plaintext (level " +
                        std::to_string(params.top_level()) + "), got " +
                        std::to_string(pt.level()));
  }
  const auto& ring = params.ring();
  const RnsPolynomial v = to_evaluation(lattice::sample_ternary_secret(ring, rng));
  const lattice::DiscreteGaussian gaussian(params.error_sigma());
  auto sample_error = [&] {
    std::vector<std::int64_t> coeffs(ring->ring_degree());
    for (auto& c : coeffs) c = gaussian(rng);
    return to_evaluation(RnsPolynomial::from_signed(ring, ring->prime_count(), coeffs));
  };
  const RnsPolynomial e0 = sample_error();
  const RnsPolynomial e1 = sample_error();

  RnsPolynomial c0 = lattice::ring_mul(v, pk.b);
  lattice::ring_add_inplace(c0, e0);
  lattice::ring_add_inplace(c0, pt.poly);
  RnsPolynomial c1 = lattice::ring_mul(v, pk.a);
  lattice::ring_add_inplace(c1, e1);
  return Ciphertext{std::move(c0), std::move(c1), pt.scale, params.slot_count()};
}

Plaintext decrypt(const SecretKey& sk, const Ciphertext& ct) {
  internal::record_decrypt();
  const RnsPolynomial s = sk.s_.truncated(ct.c1.residue_count());
  RnsPolynomial m = lattice::ring_mul(ct.c1, s);
  lattice::ring_add_inplace(m, ct.c0);
  return Plaintext{std::move(m), ct.scale};
}

void add_ct_inplace(Ciphertext& acc, const Ciphertext& b) {
  require_same_level(acc.level(), b.level(), "add_ct");
  const double tolerance = kScaleTolerance * std::max(acc.scale, b.scale);
  if (std::abs(acc.scale - b.scale) > tolerance) {
    throw ScaleMismatch("add_ct: scales " + std::to_string(acc.scale) + " and " +
                        std::to_string(b.scale) + " differ");
  }
  lattice::ring_add_inplace(acc.c0, b.c0);
  lattice::ring_add_inplace(acc.c1, b.c1);
}

Ciphertext add_ct(const Ciphertext& a, const Ciphertext& b) {
  Ciphertext out = a;
  add_ct_inplace(out, b);
  return out;
}

Ciphertext mul_plain(const Ciphertext& ct, const Plaintext& pt) {
  require_same_level(ct.level(), pt.level(), "mul_plain");
  if (ct.level() == 0) {
    throw LevelExhausted("mul_plain at level 0 leaves nothing to rescale with");
  }
  return Ciphertext{lattice::ring_mul(ct.c0, pt.poly),
                    lattice::ring_mul(ct.c1, pt.poly), ct.scale * pt.scale,
                    ct.slot_count};
}

Ciphertext rescale(const Ciphertext& ct) {
  if (ct.level() == 0) throw LevelExhausted("rescale at level 0");
  const double dropped =
      static_cast<double>(ct.c0.params().modulus(ct.level()).value());
  auto drop = [](const RnsPolynomial& p) {
    return to_evaluation(lattice::drop_last_modulus(lattice::ntt_inverse(p)));
  };
  return Ciphertext{drop(ct.c0), drop(ct.c1), ct.scale / dropped, ct.slot_count};
}

Ciphertext drop_to_level(const Ciphertext& ct, std::size_t level) {
  if (level > ct.level()) {
    throw LevelMismatch("drop_to_level: cannot raise level " + std::to_string(ct.level()) +
                        " to " + std::to_string(level));
  }
  return Ciphertext{ct.c0.truncated(level + 1), ct.c1.truncated(level + 1), ct.scale,
                    ct.slot_count};
}

}  // namespace hefl::ckks
