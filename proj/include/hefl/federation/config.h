// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_FEDERATION_CONFIG_H_
#define HEFL_FEDERATION_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hefl/ckks/params.h"
#include "hefl/data/partition.h"
#include "hefl/fedavg/mlp.h"
#include "hefl/fedavg/sgd.h"
#include "hefl/wire/transport.h"

namespace hefl::federation {

enum class Mode { kEncrypted, kPlaintext };
enum class TransportKind { kInProcess, kTcp };

std::string_view mode_name(Mode mode);
std::string_view transport_name(TransportKind kind);
Mode parse_mode(std::string_view text);                // throws ConfigError
TransportKind parse_transport(std::string_view text);  // throws ConfigError

struct DataSpec {
  std::size_t train_count = data::kDefaultTrainCount;
  std::size_t eval_count = data::kDefaultEvalCount;
  std::size_t input_dim = data::kDefaultInputDim;
  double noise_sigma = data::kDefaultNoiseSigma;
};

// Testing hook: learner `learner` drops its connection when the community
// model of `round` arrives, instead of answering.
struct InjectedDisconnect {
  std::size_t learner = 0;
  std::size_t round = 0;
};

struct FederationConfig {
  std::size_t learner_count = 8;
  std::size_t rounds = 25;
  fedavg::TrainerSpec trainer;
  ckks::CkksConfig ckks;
  data::PartitionScheme scheme;
  std::uint64_t seed = 1;
  TransportKind transport = TransportKind::kInProcess;
  wire::Endpoint listen;
  Mode mode = Mode::kEncrypted;
  DataSpec data;
  std::vector<std::size_t> hidden_widths = {64, 32};

  bool record_timings = true;  // false zeroes every timing column
  bool trace = false;          // keep every frame the controller sends/receives
  std::size_t workers = 1;     // threads per learner for chunk encryption
  std::optional<InjectedDisconnect> disconnect;

  fedavg::MlpShape mlp_shape() const;
  // Throws ConfigError.
  void validate() const;
};

}  // namespace hefl::federation

#endif  // HEFL_FEDERATION_CONFIG_H_
