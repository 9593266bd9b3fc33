// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/pack/packed_model.h"

#include <string>

#include "hefl/ckks/encoder.h"
#include "hefl/common/error.h"
#include "hefl/common/parallel.h"

namespace hefl::pack {

void PackedModel::validate() const {
  if (ciphertexts.size() != layout.ciphertext_count()) {
    throw ShapeMismatch("packed model has " + std::to_string(ciphertexts.size()) +
                        " ciphertexts, layout needs " +
                        std::to_string(layout.ciphertext_count()));
  }
  for (const auto& ct : ciphertexts) {
    if (ct.level() != level()) throw LevelMismatch("packed model mixes levels");
    if (ct.scale != scale()) throw ScaleMismatch("packed model mixes scales");
    if (ct.slot_count != layout.slots_per_ciphertext()) {
      throw ShapeMismatch("ciphertext slot count disagrees with layout");
    }
  }
}

PackedModel encrypt_model(const Model& model, const ckks::PublicKey& pk,
                          lattice::Prng& rng, std::size_t workers) {
  const auto& params = pk.params;
  auto [layout, flat] = flatten(model, params.slot_count());
  const std::size_t chunks = layout.ciphertext_count();
  const std::size_t slots = params.slot_count();
  std::vector<std::uint64_t> seeds(chunks);
  for (auto& s : seeds) s = rng.fork_seed();

  std::vector<ckks::Ciphertext> cts(chunks, ckks::Ciphertext{
      lattice::RnsPolynomial(params.ring(), 1, lattice::Domain::kEvaluation),
      lattice::RnsPolynomial(params.ring(), 1, lattice::Domain::kEvaluation), 0.0, 0});
  parallel_for(chunks, workers, [&](std::size_t i) {
    const std::size_t begin = i * slots;
    const std::size_t len = std::min(slots, layout.total_parameters() - begin);
    // encode zero pads the tail.
    const std::span<const double> chunk(flat.data() + begin, len);
    lattice::Prng chunk_rng(seeds[i]);
    cts[i] = ckks::encrypt(pk, ckks::encode(chunk, params), chunk_rng);
  });
  return PackedModel{std::move(layout), std::move(cts)};
}

Model decrypt_model(const PackedModel& packed, const ckks::SecretKey& sk,
                    std::size_t workers) {
  packed.validate();
  const auto& params = sk.params();
  const std::size_t slots = packed.layout.slots_per_ciphertext();
  if (slots != params.slot_count()) {
    throw IncompatibleParams("layout slot count disagrees with key parameters");
  }
  Eigen::VectorXd flat(static_cast<Eigen::Index>(packed.ciphertexts.size() * slots));
  parallel_for(packed.ciphertexts.size(), workers, [&](std::size_t i) {
    flat.segment(static_cast<Eigen::Index>(i * slots), static_cast<Eigen::Index>(slots)) =
        ckks::decode(ckks::decrypt(sk, packed.ciphertexts[i]), params);
  });
  return unflatten(packed.layout, flat);
}

}  // namespace hefl::pack
