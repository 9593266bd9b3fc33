// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_FEDAVG_AGGREGATE_H_
#define HEFL_FEDAVG_AGGREGATE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "hefl/ckks/params.h"
#include "hefl/pack/model.h"
#include "hefl/pack/packed_model.h"

namespace hefl::fedavg {

// Public per-learner contributions p_k (local training set sizes).
class AggregationWeights {
 public:
  // Throws ValueError unless every p_k is finite and > 0.
  explicit AggregationWeights(std::vector<double> contributions);

  std::size_t size() const { return contributions_.size(); }
  const std::vector<double>& contributions() const { return contributions_; }
  double total() const { return total_; }
  double normalized(std::size_t k) const { return contributions_[k] / total_; }

 private:
  std::vector<double> contributions_;
  double total_ = 0;
};

// sum_k (p_k / P) w_k, accumulated in ascending k.
pack::Model aggregate_plain(std::span<const pack::Model> models,
                            const AggregationWeights& weights);

// Per chunk: rescale(sum_k mul_plain(ct_k, p_k / P)). Each weight is encoded
// at the scale of the prime that the rescale drops, so the result comes back
// at the input scale. Consumes exactly one level. Needs only public data.
pack::PackedModel aggregate_encrypted(std::span<const pack::PackedModel> models,
                                      const AggregationWeights& weights,
                                      const ckks::CkksParams& params,
                                      std::size_t workers = 1);

}  // namespace hefl::fedavg

#endif  // HEFL_FEDAVG_AGGREGATE_H_
