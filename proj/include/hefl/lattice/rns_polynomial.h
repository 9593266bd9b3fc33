// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_LATTICE_RNS_POLYNOMIAL_H_
#define HEFL_LATTICE_RNS_POLYNOMIAL_H_

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <span>

#include "hefl/lattice/ring_params.h"

namespace hefl::lattice {

enum class Domain { kCoefficient, kEvaluation };

// One row per prime, one column per coefficient (or NTT slot).
using ResidueMatrix =
    Eigen::Matrix<u64, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Element of Z_Q[X]/(X^N + 1) stored as residues modulo the first
// `residue_count` primes of the chain. A polynomial at level l carries
// l + 1 residues.
class RnsPolynomial {
 public:
  // Zero polynomial.
  RnsPolynomial(RingParamsPtr params, std::size_t residue_count, Domain domain);

  // Coefficient-domain polynomial with small signed integer coefficients.
  static RnsPolynomial from_signed(RingParamsPtr params,
                                   std::size_t residue_count,
                                   std::span<const std::int64_t> coefficients);

  const RingParams& params() const { return *params_; }
  const RingParamsPtr& params_ptr() const { return params_; }
  std::size_t ring_degree() const { return params_->ring_degree(); }
  std::size_t residue_count() const {
    return static_cast<std::size_t>(residues_.rows());
  }
  std::size_t level() const { return residue_count() - 1; }
  Domain domain() const { return domain_; }

  const ResidueMatrix& residues() const { return residues_; }
  ResidueMatrix& residues() { return residues_; }

  std::span<u64> residue(std::size_t i) {
    return {residues_.row(i).data(), ring_degree()};
  }
  std::span<const u64> residue(std::size_t i) const {
    return {residues_.row(i).data(), ring_degree()};
  }

  // Keeps the first `count` residues, discarding higher primes without any
  // rounding. Valid in both domains.
  RnsPolynomial truncated(std::size_t count) const;

  void set_domain(Domain d) { domain_ = d; }

  friend bool operator==(const RnsPolynomial& a, const RnsPolynomial& b) {
    return a.params_ == b.params_ && a.domain_ == b.domain_ &&
           a.residues_ == b.residues_;
  }

 private:
  RingParamsPtr params_;
  ResidueMatrix residues_;
  Domain domain_;
};

RnsPolynomial ntt_forward(RnsPolynomial p);
RnsPolynomial ntt_inverse(RnsPolynomial p);
void ntt_forward_inplace(RnsPolynomial& p);
void ntt_inverse_inplace(RnsPolynomial& p);

RnsPolynomial ring_add(const RnsPolynomial& a, const RnsPolynomial& b);
RnsPolynomial ring_sub(const RnsPolynomial& a, const RnsPolynomial& b);
RnsPolynomial ring_negate(const RnsPolynomial& a);
void ring_add_inplace(RnsPolynomial& acc, const RnsPolynomial& b);

// Negacyclic product. Coefficient-domain operands are transformed to the
// evaluation domain first; the result is always in the evaluation domain.
RnsPolynomial ring_mul(const RnsPolynomial& a, const RnsPolynomial& b);

// round(p / q_L) over the chain q_0..q_{L-1}. Requires coefficient domain
// and at least two residues.
RnsPolynomial drop_last_modulus(const RnsPolynomial& p);

// Centered integer value of every coefficient, as doubles. The lift is exact
// up to the final rounding into double. Requires coefficient domain.
Eigen::VectorXd centered_coefficients(const RnsPolynomial& p);

}  // namespace hefl::lattice

#endif  // HEFL_LATTICE_RNS_POLYNOMIAL_H_
