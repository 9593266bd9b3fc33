// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "hefl/common/error.h"
#include "hefl/lattice/modarith.h"
#include "hefl/lattice/prng.h"
#include "hefl/lattice/ring_params.h"
#include "hefl/lattice/rns_polynomial.h"
#include "hefl/lattice/sampling.h"

namespace hefl::lattice {
namespace {

using boost::multiprecision::cpp_int;

RingParamsPtr toy_ring(std::size_t n, std::vector<u64> primes) {
  return RingParams::create(n, std::move(primes), SecurityLevel::kNone);
}

RnsPolynomial random_poly(const RingParamsPtr& params, std::mt19937_64& gen) {
  RnsPolynomial p(params, params->prime_count(), Domain::kCoefficient);
  for (std::size_t i = 0; i < params->prime_count(); ++i) {
    std::uniform_int_distribution<u64> dist(0, params->modulus(i).value() - 1);
    for (auto& v : p.residue(i)) v = dist(gen);
  }
  return p;
}

// O(N^2) negacyclic convolution modulo a single prime.
std::vector<u64> schoolbook_negacyclic(std::span<const u64> a,
                                       std::span<const u64> b, u64 q) {
  const std::size_t n = a.size();
  std::vector<u128> acc(n, 0);
  std::vector<u64> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const u64 prod = static_cast<u64>(static_cast<u128>(a[i]) * b[j] % q);
      const std::size_t k = i + j;
      if (k < n) {
        out[k] = (out[k] + prod) % q;
      } else {
        out[k - n] = (out[k - n] + q - prod) % q;
      }
    }
  }
  return out;
}

void expect_closed(const RnsPolynomial& p) {
  for (std::size_t i = 0; i < p.residue_count(); ++i) {
    const u64 q = p.params().modulus(i).value();
    for (u64 v : p.residue(i)) ASSERT_LT(v, q);
  }
}

TEST(ModulusTest, BarrettMatchesRemainder) {
  std::mt19937_64 gen(7);
  for (u64 q : {u64{17}, u64{97}, u64{1152921504606748673ULL},
                (u64{1} << 61) - 1, u64{4503599627468801ULL}}) {
    const Modulus m(q);
    for (int t = 0; t < 20000; ++t) {
      const u128 x = (static_cast<u128>(gen()) << 64) | gen();
      ASSERT_EQ(m.reduce(x), static_cast<u64>(x % q)) << "q=" << q;
      const u64 a = gen() % q;
      const u64 b = gen() % q;
      ASSERT_EQ(m.mul(a, b), static_cast<u64>(static_cast<u128>(a) * b % q));
    }
  }
}

TEST(ModulusTest, RejectsOversizedModulus) {
  EXPECT_THROW(Modulus(u64{1} << 62), ValueError);
  EXPECT_THROW(Modulus(1), ValueError);
}

TEST(ModulusTest, ShoupMatchesRemainder) {
  std::mt19937_64 gen(11);
  const u64 q = 1152921504606748673ULL;
  for (int t = 0; t < 10000; ++t) {
    const u64 w = gen() % q;
    const u64 x = gen() % q;
    ASSERT_EQ(mul_shoup(x, ShoupConstant(w, q), q),
              static_cast<u64>(static_cast<u128>(x) * w % q));
  }
}

TEST(PrimeTest, MillerRabinAgreesWithTrialDivision) {
  auto trial = [](u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  };
  for (u64 n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(n), trial(n)) << n;
  EXPECT_TRUE(is_prime((u64{1} << 61) - 1));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to 2,3,5,7
}

TEST(PrimeTest, NttPrimesAreOneModTwoN) {
  const auto primes = ntt_primes_above(u64{1} << 52, 32768, 2);
  ASSERT_EQ(primes.size(), 2u);
  for (u64 p : primes) {
    EXPECT_TRUE(is_prime(p));
    EXPECT_EQ(p % 32768, 1u);
    EXPECT_GT(p, u64{1} << 52);
  }
  EXPECT_LT(primes[0], primes[1]);
}

TEST(RingParamsTest, RejectsMalformedChains) {
  EXPECT_THROW(toy_ring(12, {17}), ValueError);       // not a power of two
  EXPECT_THROW(toy_ring(8, {19}), ValueError);        // 19 != 1 mod 16
  EXPECT_THROW(toy_ring(8, {17, 17}), ValueError);    // duplicate
  EXPECT_THROW(toy_ring(8, {33}), ValueError);        // composite
  EXPECT_NO_THROW(toy_ring(8, {17, 97, 113}));
}

TEST(RingParamsTest, SecurityTableGate) {
  const std::size_t n = 16384;
  EXPECT_EQ(max_modulus_bits_128(n), 438);
  // 60 + 2 x 52 style chain fits.
  auto chain = ntt_primes_above(u64{1} << 60, 2 * n, 1);
  const auto rescale = ntt_primes_above(u64{1} << 52, 2 * n, 2);
  chain.insert(chain.end(), rescale.begin(), rescale.end());
  const auto ok = RingParams::create(n, chain, SecurityLevel::kClassic128);
  EXPECT_LE(ok->total_modulus_bits(), 438);

  // Eight ~57-bit primes: 8 * 57 = 456 > 438.
  const auto big = ntt_primes_above(u64{1} << 56, 2 * n, 8);
  EXPECT_THROW(RingParams::create(n, big, SecurityLevel::kClassic128), SecurityError);
  EXPECT_NO_THROW(RingParams::create(n, big, SecurityLevel::kNone));
  // Toy degrees have no table entry.
  EXPECT_THROW(RingParams::create(8, {17}, SecurityLevel::kClassic128), SecurityError);
}

TEST(NttTest, ZeroIsFixedPoint) {
  const auto ring = toy_ring(8, {17});
  RnsPolynomial zero(ring, 1, Domain::kCoefficient);
  const auto hat = ntt_forward(zero);
  EXPECT_EQ(hat.domain(), Domain::kEvaluation);
  for (u64 v : hat.residue(0)) EXPECT_EQ(v, 0u);
}

TEST(NttTest, ConstantEvaluatesToItself) {
  const auto ring = toy_ring(8, {17, 97});
  std::vector<std::int64_t> c(8, 0);
  c[0] = 5;
  const auto hat = ntt_forward(RnsPolynomial::from_signed(ring, 2, c));
  for (std::size_t i = 0; i < 2; ++i) {
    for (u64 v : hat.residue(i)) EXPECT_EQ(v, 5u);
  }
}

TEST(NttTest, RoundTripToyRing) {
  const auto ring = toy_ring(8, {17});
  std::mt19937_64 gen(3);
  for (int t = 0; t < 100; ++t) {
    const auto p = random_poly(ring, gen);
    EXPECT_EQ(ntt_inverse(ntt_forward(p)), p);
  }
}

TEST(NttTest, RoundTripBitExactAcrossDegrees) {
  std::mt19937_64 gen(5);
  for (std::size_t n : {std::size_t{8}, std::size_t{1024}, std::size_t{16384}}) {
    auto chain = ntt_primes_above(u64{1} << 60, 2 * n, 1);
    const auto rescale = ntt_primes_above(u64{1} << 52, 2 * n, 2);
    chain.insert(chain.end(), rescale.begin(), rescale.end());
    const auto ring = toy_ring(n, chain);
    const auto p = random_poly(ring, gen);
    const auto hat = ntt_forward(p);
    expect_closed(hat);
    EXPECT_EQ(ntt_inverse(hat), p) << "N=" << n;
  }
}

TEST(NttTest, WrongDomainThrows) {
  const auto ring = toy_ring(8, {17});
  RnsPolynomial p(ring, 1, Domain::kEvaluation);
  EXPECT_THROW(ntt_forward(p), DomainError);
  RnsPolynomial c(ring, 1, Domain::kCoefficient);
  EXPECT_THROW(ntt_inverse(c), DomainError);
}

TEST(RingMulTest, IdentityAndWrap) {
  const auto ring = toy_ring(8, {17, 97});
  std::mt19937_64 gen(9);
  const auto a = random_poly(ring, gen);
  std::vector<std::int64_t> one(8, 0);
  one[0] = 1;
  EXPECT_EQ(ntt_inverse(ring_mul(a, RnsPolynomial::from_signed(ring, 2, one))), a);

  std::vector<std::int64_t> half(8, 0);
  half[4] = 1;  // X^(N/2)
  const auto x_half = RnsPolynomial::from_signed(ring, 2, half);
  const auto sq = ntt_inverse(ring_mul(x_half, x_half));
  EXPECT_EQ(sq.residue(0)[0], 16u);
  EXPECT_EQ(sq.residue(1)[0], 96u);
  for (std::size_t j = 1; j < 8; ++j) {
    EXPECT_EQ(sq.residue(0)[j], 0u);
    EXPECT_EQ(sq.residue(1)[j], 0u);
  }
}

void check_against_schoolbook(std::size_t n, std::vector<u64> primes, int cases) {
  const auto ring = toy_ring(n, std::move(primes));
  std::mt19937_64 gen(n * 131 + 1);
  for (int t = 0; t < cases; ++t) {
    const auto a = random_poly(ring, gen);
    const auto b = random_poly(ring, gen);
    const auto c = ntt_inverse(ring_mul(a, b));
    expect_closed(c);
    for (std::size_t i = 0; i < ring->prime_count(); ++i) {
      const auto expected =
          schoolbook_negacyclic(a.residue(i), b.residue(i), ring->modulus(i).value());
      ASSERT_TRUE(std::equal(expected.begin(), expected.end(), c.residue(i).begin()))
          << "N=" << n << " case " << t << " prime " << i;
    }
  }
}

TEST(RingMulTest, MatchesSchoolbookN8) { check_against_schoolbook(8, {17}, 1000); }

TEST(RingMulTest, MatchesSchoolbookN64) {
  check_against_schoolbook(64, ntt_primes_above(u64{1} << 52, 128, 3), 1000);
}

TEST(RingMulTest, ParameterMismatchThrows) {
  const auto r1 = toy_ring(8, {17});
  const auto r2 = toy_ring(16, {97});
  EXPECT_THROW(ring_mul(RnsPolynomial(r1, 1, Domain::kEvaluation),
                        RnsPolynomial(r2, 1, Domain::kEvaluation)),
               IncompatibleParams);
  const auto r3 = toy_ring(8, {97});
  EXPECT_THROW(ring_add(RnsPolynomial(r1, 1, Domain::kEvaluation),
                        RnsPolynomial(r3, 1, Domain::kEvaluation)),
               IncompatibleParams);
}

TEST(RingAddTest, IdentitiesAndOracle) {
  const auto ring = toy_ring(8, {17});
  std::mt19937_64 gen(13);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_poly(ring, gen);
    const auto b = random_poly(ring, gen);
    const RnsPolynomial zero(ring, 1, Domain::kCoefficient);
    EXPECT_EQ(ring_add(a, zero), a);
    EXPECT_EQ(ring_sub(a, a), zero);
    const auto sum = ring_add(a, b);
    const auto diff = ring_sub(a, b);
    for (std::size_t j = 0; j < 8; ++j) {
      EXPECT_EQ(sum.residue(0)[j], (a.residue(0)[j] + b.residue(0)[j]) % 17);
      EXPECT_EQ(diff.residue(0)[j], (a.residue(0)[j] + 17 - b.residue(0)[j]) % 17);
    }
  }
  EXPECT_THROW(ring_add(RnsPolynomial(ring, 1, Domain::kCoefficient),
                        RnsPolynomial(ring, 1, Domain::kEvaluation)),
               DomainError);
}

TEST(DropLastModulusTest, ExactMultiples) {
  const auto ring = toy_ring(8, {97, 193});
  std::vector<std::int64_t> c(8);
  for (std::size_t j = 0; j < 8; ++j) c[j] = 193 * (static_cast<std::int64_t>(j) - 3);
  const auto dropped = drop_last_modulus(RnsPolynomial::from_signed(ring, 2, c));
  ASSERT_EQ(dropped.residue_count(), 1u);
  for (std::size_t j = 0; j < 8; ++j) {
    EXPECT_EQ(dropped.residue(0)[j], Modulus(97).from_signed(static_cast<std::int64_t>(j) - 3));
  }
  const RnsPolynomial zero(ring, 2, Domain::kCoefficient);
  EXPECT_EQ(drop_last_modulus(zero), RnsPolynomial(ring, 1, Domain::kCoefficient));
}

TEST(DropLastModulusTest, MatchesBigIntegerOracle) {
  const std::vector<u64> primes = {97, 193};
  const auto ring = toy_ring(8, primes);
  const cpp_int q0 = 97, q1 = 193, big_q = q0 * q1;
  std::mt19937_64 gen(17);
  for (int t = 0; t < 500; ++t) {
    const auto p = random_poly(ring, gen);
    const auto dropped = drop_last_modulus(p);
    for (std::size_t j = 0; j < 8; ++j) {
      // CRT reconstruct x in [0, Q), then round(x / q1) mod q0.
      const cpp_int r0 = p.residue(0)[j], r1 = p.residue(1)[j];
      cpp_int x = 0;
      for (cpp_int cand = r0; cand < big_q; cand += q0) {
        if (cand % q1 == r1) {
          x = cand;
          break;
        }
      }
      const cpp_int rounded = (2 * x + q1) / (2 * q1);
      ASSERT_EQ(cpp_int(dropped.residue(0)[j]), rounded % q0) << "t=" << t;
    }
  }
}

TEST(DropLastModulusTest, ErrorsAtLastLevelAndWrongDomain) {
  const auto ring = toy_ring(8, {97, 193});
  EXPECT_THROW(drop_last_modulus(RnsPolynomial(ring, 1, Domain::kCoefficient)),
               LevelExhausted);
  EXPECT_THROW(drop_last_modulus(RnsPolynomial(ring, 2, Domain::kEvaluation)),
               DomainError);
}

TEST(CenteredLiftTest, MatchesBigIntegerOracle) {
  auto chain = ntt_primes_above(u64{1} << 60, 64, 1);
  const auto rescale = ntt_primes_above(u64{1} << 52, 64, 2);
  chain.insert(chain.end(), rescale.begin(), rescale.end());
  const auto ring = toy_ring(32, chain);
  cpp_int big_q = 1;
  for (u64 q : chain) big_q *= q;
  std::mt19937_64 gen(19);
  for (int t = 0; t < 50; ++t) {
    // Values spanning small to near-Q/2 magnitudes, both signs.
    std::vector<cpp_int> values(32);
    RnsPolynomial p(ring, 3, Domain::kCoefficient);
    for (std::size_t j = 0; j < 32; ++j) {
      cpp_int v = (cpp_int(gen()) << 64 | gen()) << 64 | gen();
      v %= (big_q / 2) >> static_cast<unsigned>(gen() % 160);
      if (gen() & 1) v = -v;
      values[j] = v;
      for (std::size_t i = 0; i < 3; ++i) {
        cpp_int r = v % chain[i];
        if (r < 0) r += chain[i];
        p.residue(i)[j] = static_cast<u64>(r);
      }
    }
    const auto lifted = centered_coefficients(p);
    for (std::size_t j = 0; j < 32; ++j) {
      const double expected = static_cast<double>(values[j]);
      const double got = lifted[static_cast<Eigen::Index>(j)];
      ASSERT_NEAR(got, expected, std::abs(expected) * 1e-15 + 1e-9);
    }
  }
}

TEST(SamplingTest, TernaryDeterministicAndEncoded) {
  const auto ring = toy_ring(1024, ntt_primes_above(u64{1} << 40, 2048, 2));
  Prng a(42), b(42);
  const auto s1 = sample_ternary_secret(ring, a);
  const auto s2 = sample_ternary_secret(ring, b);
  EXPECT_EQ(s1, s2);
  for (std::size_t i = 0; i < 2; ++i) {
    const u64 q = ring->modulus(i).value();
    for (u64 v : s1.residue(i)) EXPECT_TRUE(v == 0 || v == 1 || v == q - 1);
  }
  // The same coefficient is -1 in every residue or in none.
  for (std::size_t j = 0; j < 1024; ++j) {
    EXPECT_EQ(s1.residue(0)[j] == ring->modulus(0).value() - 1,
              s1.residue(1)[j] == ring->modulus(1).value() - 1);
  }
}

TEST(SamplingTest, TernaryHistogramConcentration) {
  Prng rng(2024);
  const std::size_t n = 16384;
  const auto draws = sample_ternary(n, rng);
  std::array<int, 3> counts{};
  for (auto c : draws) counts[static_cast<std::size_t>(c + 1)]++;
  const double mean = n / 3.0;
  const double sigma = std::sqrt(n * (1.0 / 3) * (2.0 / 3));
  for (int c : counts) EXPECT_LT(std::abs(c - mean), 5 * sigma);
}

TEST(SamplingTest, GaussianTailMeanAndDeterminism) {
  const DiscreteGaussian gaussian(3.19);
  EXPECT_EQ(gaussian.bound(), 19);
  Prng rng(99);
  double sum = 0, sq = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto x = gaussian(rng);
    ASSERT_LE(std::abs(x), 20);
    sum += static_cast<double>(x);
    sq += static_cast<double>(x * x);
  }
  EXPECT_LT(std::abs(sum / draws), 0.1);
  EXPECT_NEAR(std::sqrt(sq / draws), 3.19, 0.05);

  const auto ring = toy_ring(1024, ntt_primes_above(u64{1} << 40, 2048, 1));
  Prng a(5), b(5);
  EXPECT_EQ(sample_gaussian_error(ring, a, 3.19), sample_gaussian_error(ring, b, 3.19));
  EXPECT_THROW(DiscreteGaussian(0.0), ValueError);
}

TEST(SamplingTest, UniformIsClosed) {
  const auto ring = toy_ring(64, ntt_primes_above(u64{1} << 52, 128, 3));
  Prng rng(1);
  expect_closed(sample_uniform(ring, 3, Domain::kEvaluation, rng));
}

}  // namespace
}  // namespace hefl::lattice
