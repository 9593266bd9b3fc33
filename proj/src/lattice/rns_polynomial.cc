// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/lattice/rns_polynomial.h"

#include <string>

#include "hefl/common/error.h"

namespace hefl::lattice {

namespace {

void require_compatible(const RnsPolynomial& a, const RnsPolynomial& b,
                        const char* op) {
  if (a.params_ptr() != b.params_ptr() &&
      (a.ring_degree() != b.ring_degree() ||
       a.params().prime_count() != b.params().prime_count())) {
    throw IncompatibleParams(std::string(op) + ": operands use different rings");
  }
  if (a.params_ptr() != b.params_ptr()) {
    for (std::size_t i = 0; i < a.params().prime_count(); ++i) {
      if (a.params().modulus(i).value() != b.params().modulus(i).value()) {
        throw IncompatibleParams(std::string(op) +
                                 ": operands use different modulus chains");
      }
    }
  }
  if (a.residue_count() != b.residue_count()) {
    throw IncompatibleParams(std::string(op) + ": residue counts differ (" +
                             std::to_string(a.residue_count()) + " vs " +
                             std::to_string(b.residue_count()) + ")");
  }
}

void require_same_domain(const RnsPolynomial& a, const RnsPolynomial& b,
                         const char* op) {
  if (a.domain() != b.domain()) {
    throw DomainError(std::string(op) + ": operands are in different domains");
  }
}

}  // namespace

RnsPolynomial::RnsPolynomial(RingParamsPtr params, std::size_t residue_count,
                             Domain domain)
    : params_(std::move(params)), domain_(domain) {
  if (!params_) throw ValueError("null ring parameters");
  if (residue_count == 0 || residue_count > params_->prime_count()) {
    throw IncompatibleParams("residue count " + std::to_string(residue_count) +
                             " outside chain of " +
                             std::to_string(params_->prime_count()));
  }
  residues_ = ResidueMatrix::Zero(static_cast<Eigen::Index>(residue_count),
                                  static_cast<Eigen::Index>(params_->ring_degree()));
}

RnsPolynomial RnsPolynomial::from_signed(
    RingParamsPtr params, std::size_t residue_count,
    std::span<const std::int64_t> coefficients) {
  RnsPolynomial p(std::move(params), residue_count, Domain::kCoefficient);
  if (coefficients.size() != p.ring_degree()) {
    throw ValueError("expected " + std::to_string(p.ring_degree()) +
                     " coefficients, got " + std::to_string(coefficients.size()));
  }
  for (std::size_t i = 0; i < residue_count; ++i) {
    const Modulus& q = p.params().modulus(i);
    auto row = p.residue(i);
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
      row[j] = q.from_signed(coefficients[j]);
    }
  }
  return p;
}

RnsPolynomial RnsPolynomial::truncated(std::size_t count) const {
  if (count == 0 || count > residue_count()) {
    throw IncompatibleParams("cannot truncate to " + std::to_string(count) +
                             " residues");
  }
  RnsPolynomial out(params_, count, domain_);
  out.residues_ = residues_.topRows(static_cast<Eigen::Index>(count));
  return out;
}

void ntt_forward_inplace(RnsPolynomial& p) {
  if (p.domain() != Domain::kCoefficient) {
    throw DomainError("ntt_forward expects a coefficient-domain polynomial");
  }
  for (std::size_t i = 0; i < p.residue_count(); ++i) {
    p.params().ntt(i).forward(p.residue(i));
  }
  p.set_domain(Domain::kEvaluation);
}

void ntt_inverse_inplace(RnsPolynomial& p) {
  if (p.domain() != Domain::kEvaluation) {
    throw DomainError("ntt_inverse expects an evaluation-domain polynomial");
  }
  for (std::size_t i = 0; i < p.residue_count(); ++i) {
    p.params().ntt(i).inverse(p.residue(i));
  }
  p.set_domain(Domain::kCoefficient);
}

RnsPolynomial ntt_forward(RnsPolynomial p) {
  ntt_forward_inplace(p);
  return p;
}

RnsPolynomial ntt_inverse(RnsPolynomial p) {
  ntt_inverse_inplace(p);
  return p;
}

RnsPolynomial ring_add(const RnsPolynomial& a, const RnsPolynomial& b) {
  RnsPolynomial out = a;
  ring_add_inplace(out, b);
  return out;
}

void ring_add_inplace(RnsPolynomial& acc, const RnsPolynomial& b) {
  require_compatible(acc, b, "ring_add");
  require_same_domain(acc, b, "ring_add");
  for (std::size_t i = 0; i < acc.residue_count(); ++i) {
    const u64 q = acc.params().modulus(i).value();
    const auto r = static_cast<Eigen::Index>(i);
    acc.residues().row(r) = acc.residues().row(r).binaryExpr(
        b.residues().row(r), [q](u64 x, u64 y) {
          const u64 s = x + y;
          return s >= q ? s - q : s;
        });
  }
}

RnsPolynomial ring_sub(const RnsPolynomial& a, const RnsPolynomial& b) {
  require_compatible(a, b, "ring_sub");
  require_same_domain(a, b, "ring_sub");
  RnsPolynomial out = a;
  for (std::size_t i = 0; i < a.residue_count(); ++i) {
    const u64 q = a.params().modulus(i).value();
    const auto r = static_cast<Eigen::Index>(i);
    out.residues().row(r) = a.residues().row(r).binaryExpr(
        b.residues().row(r),
        [q](u64 x, u64 y) { return x >= y ? x - y : x + q - y; });
  }
  return out;
}

RnsPolynomial ring_negate(const RnsPolynomial& a) {
  RnsPolynomial out = a;
  for (std::size_t i = 0; i < a.residue_count(); ++i) {
    const u64 q = a.params().modulus(i).value();
    const auto r = static_cast<Eigen::Index>(i);
    out.residues().row(r) =
        a.residues().row(r).unaryExpr([q](u64 x) { return x == 0 ? x : q - x; });
  }
  return out;
}

RnsPolynomial ring_mul(const RnsPolynomial& a, const RnsPolynomial& b) {
  require_compatible(a, b, "ring_mul");
  const RnsPolynomial lhs =
      a.domain() == Domain::kEvaluation ? a : ntt_forward(a);
  const RnsPolynomial rhs =
      b.domain() == Domain::kEvaluation ? b : ntt_forward(b);
  RnsPolynomial out(lhs.params_ptr(), lhs.residue_count(), Domain::kEvaluation);
  for (std::size_t i = 0; i < lhs.residue_count(); ++i) {
    const Modulus& q = lhs.params().modulus(i);
    auto x = lhs.residue(i);
    auto y = rhs.residue(i);
    auto z = out.residue(i);
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = q.mul(x[j], y[j]);
  }
  return out;
}

RnsPolynomial drop_last_modulus(const RnsPolynomial& p) {
  if (p.domain() != Domain::kCoefficient) {
    throw DomainError("drop_last_modulus expects a coefficient-domain polynomial");
  }
  if (p.residue_count() < 2) {
    throw LevelExhausted("no modulus left to drop");
  }
  const std::size_t last = p.residue_count() - 1;
  const u64 q_last = p.params().modulus(last).value();
  const u64 half = q_last >> 1;
  RnsPolynomial out(p.params_ptr(), last, Domain::kCoefficient);
  const auto top = p.residue(last);
  for (std::size_t i = 0; i < last; ++i) {
    const Modulus& qi = p.params().modulus(i);
    const u64 inv = p.params().inv_prime_mod(last, i);
    const u64 q_last_mod = qi.reduce(q_last);
    const auto src = p.residue(i);
    auto dst = out.residue(i);
    for (std::size_t j = 0; j < dst.size(); ++j) {
      // Centered remainder r in (-q_last/2, q_last/2]; (p - r) / q_last is
      // the rounded quotient.
      const u64 r = top[j];
      const u64 r_mod = r > half ? qi.sub(qi.reduce(r), q_last_mod) : qi.reduce(r);
      dst[j] = qi.mul(qi.sub(src[j], r_mod), inv);
    }
  }
  return out;
}

Eigen::VectorXd centered_coefficients(const RnsPolynomial& p) {
  if (p.domain() != Domain::kCoefficient) {
    throw DomainError("centered_coefficients expects a coefficient-domain polynomial");
  }
  const RingParams& params = p.params();
  const std::size_t k = p.residue_count();
  const std::size_t n = p.ring_degree();
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  std::vector<std::int64_t> digits(k);
  for (std::size_t j = 0; j < n; ++j) {
    // Balanced mixed-radix (Garner) digits: x = sum d_i * q_0..q_{i-1} with
    // |d_i| <= (q_i - 1) / 2, which is the centered representative mod Q.
    for (std::size_t i = 0; i < k; ++i) {
      const Modulus& qi = params.modulus(i);
      u64 t = p.residues()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      for (std::size_t l = 0; l < i; ++l) {
        t = qi.sub(t, qi.mul(qi.from_signed(digits[l]), params.prefix_mod(i, l)));
      }
      if (i > 0) t = qi.mul(t, params.prefix_inv(i));
      const u64 q = qi.value();
      digits[i] = t > (q >> 1) ? -static_cast<std::int64_t>(q - t)
                               : static_cast<std::int64_t>(t);
    }
    double value = static_cast<double>(digits[k - 1]);
    for (std::size_t i = k - 1; i-- > 0;) {
      value = value * static_cast<double>(params.modulus(i).value()) +
              static_cast<double>(digits[i]);
    }
    out[static_cast<Eigen::Index>(j)] = value;
  }
  return out;
}

}  // namespace hefl::lattice
