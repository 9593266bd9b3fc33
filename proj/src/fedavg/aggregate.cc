// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/fedavg/aggregate.h"

#include <cmath>
#include <optional>

#include "hefl/ckks/encoder.h"
#include "hefl/common/error.h"
#include "hefl/common/parallel.h"

namespace hefl::fedavg {

AggregationWeights::AggregationWeights(std::vector<double> contributions)
    : contributions_(std::move(contributions)) {
  if (contributions_.empty()) throw ValueError("no aggregation weights");
  for (double p : contributions_) {
    if (!std::isfinite(p) || p <= 0) throw ValueError("aggregation weights must be > 0");
    total_ += p;
  }
}

pack::Model aggregate_plain(std::span<const pack::Model> models,
                            const AggregationWeights& weights) {
  if (models.empty()) throw ValueError("aggregate_plain: no models");
  if (models.size() != weights.size()) {
    throw ShapeMismatch("aggregate_plain: " + std::to_string(models.size()) +
                        " models but " + std::to_string(weights.size()) + " weights");
  }
  const pack::ModelLayout layout = pack::layout_of(models.front());
  pack::Model out = pack::zeros_like(models.front());
  for (std::size_t k = 0; k < models.size(); ++k) {
    if (!layout.matches(models[k])) {
      throw ShapeMismatch("aggregate_plain: model " + std::to_string(k) +
                          " differs in structure");
    }
    const double w = weights.normalized(k);
    for (std::size_t a = 0; a < out.size(); ++a) out[a].values += w * models[k][a].values;
  }
  return out;
}

pack::PackedModel aggregate_encrypted(std::span<const pack::PackedModel> models,
                                      const AggregationWeights& weights,
                                      const ckks::CkksParams& params,
                                      std::size_t workers) {
  if (models.empty()) throw ValueError("aggregate_encrypted: no models");
  if (models.size() != weights.size()) {
    throw ShapeMismatch("aggregate_encrypted: " + std::to_string(models.size()) +
                        " models but " + std::to_string(weights.size()) + " weights");
  }
  const auto& first = models.front();
  first.validate();
  for (std::size_t k = 1; k < models.size(); ++k) {
    models[k].validate();
    if (!(models[k].layout == first.layout)) {
      throw ShapeMismatch("aggregate_encrypted: layout of model " + std::to_string(k) +
                          " differs");
    }
    if (models[k].level() != first.level()) {
      throw LevelMismatch("aggregate_encrypted: models at different levels");
    }
  }
  const std::size_t level = first.level();
  if (level == 0) throw LevelExhausted("aggregate_encrypted: input at level 0");

  const double dropped = static_cast<double>(params.ring()->modulus(level).value());
  std::vector<ckks::Plaintext> encoded_weights;
  encoded_weights.reserve(models.size());
  for (std::size_t k = 0; k < models.size(); ++k) {
    const std::vector<double> w(params.slot_count(), weights.normalized(k));
    encoded_weights.push_back(ckks::encode(w, params, dropped, level));
  }

  const std::size_t chunks = first.ciphertexts.size();
  std::vector<std::optional<ckks::Ciphertext>> out(chunks);
  parallel_for(chunks, workers, [&](std::size_t i) {
    ckks::Ciphertext acc = ckks::mul_plain(models[0].ciphertexts[i], encoded_weights[0]);
    for (std::size_t k = 1; k < models.size(); ++k) {
      ckks::add_ct_inplace(acc, ckks::mul_plain(models[k].ciphertexts[i], encoded_weights[k]));
    }
    out[i] = ckks::rescale(acc);
  });

  pack::PackedModel result{first.layout, {}};
  result.ciphertexts.reserve(chunks);
  for (auto& ct : out) result.ciphertexts.push_back(std::move(*ct));
  return result;
}

}  // namespace hefl::fedavg
