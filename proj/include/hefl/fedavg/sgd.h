// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_FEDAVG_SGD_H_
#define HEFL_FEDAVG_SGD_H_

#include <cstddef>
#include <cstdint>

#include "hefl/data/dataset.h"
#include "hefl/pack/model.h"

namespace hefl::fedavg {

struct TrainerSpec {
  std::size_t epochs = 4;
  double learning_rate = 5e-5;
  std::size_t batch_size = 1;

  // epochs == 0 and learning_rate == 0 are accepted as no-op hooks.
  void validate() const;
  friend bool operator==(const TrainerSpec&, const TrainerSpec&) = default;
};

// Mini-batch SGD on the squared-error loss: `epochs` passes, data
// reshuffled every epoch from `seed`, one update per batch (last batch may
// be short). Throws EmptyDataset, DivergenceError on a non-finite loss.
pack::Model local_sgd(pack::Model model, const data::LabeledDataset& data,
                      const TrainerSpec& spec, std::uint64_t seed);

struct EvalResult {
  double loss = 0;  // mean squared error
  double mae = 0;
};

// Throws EmptyDataset for an empty set.
EvalResult evaluate(const pack::Model& model, const data::LabeledDataset& data);

}  // namespace hefl::fedavg

#endif  // HEFL_FEDAVG_SGD_H_
