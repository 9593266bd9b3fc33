// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_FEDERATION_RUNTIME_H_
#define HEFL_FEDERATION_RUNTIME_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "hefl/data/partition.h"
#include "hefl/federation/config.h"
#include "hefl/federation/parties.h"

namespace hefl::federation {

struct RoundMetrics {
  std::size_t round = 0;
  double loss = 0;  // held-out mean squared error
  double mae = 0;
  double t_train_ms = 0;
  double t_encrypt_ms = 0;
  double t_transfer_ms = 0;
  double t_aggregate_ms = 0;
  double t_decrypt_ms = 0;
  std::uint64_t bytes = 0;  // frames both ways, this round
};

struct FederationData {
  data::TrainEvalSplit split;
  data::PartitionPlan plan;
  std::vector<data::LabeledDataset> shards;
};

// Dataset generation and partitioning for `config` (seeded by config.seed).
FederationData prepare_data(const FederationConfig& config);

struct FederationResult {
  std::vector<RoundMetrics> rounds;
  pack::Model initial_model;
  pack::Model final_model;  // decrypted by the evaluator in encrypted mode
  std::uint64_t setup_bytes = 0;  // registration, acks and shutdown
  std::vector<wire::ChannelTrace> traces;  // controller side, by learner id
};

using RoundCallback = std::function<void(const RoundMetrics&)>;

// Synchronous FedAvg for config.rounds rounds. `on_round` sees each round's
// metrics as soon as they exist.
FederationResult run_federation(const FederationConfig& config);
FederationResult run_federation(const FederationConfig& config, const FederationData& data,
                                const RoundCallback& on_round = {});

// Plain evaluation of a community model on the held-out set.
fedavg::EvalResult evaluate_community(const pack::Model& model,
                                      const data::LabeledDataset& eval);

}  // namespace hefl::federation

#endif  // HEFL_FEDERATION_RUNTIME_H_
