// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_FEDERATION_PARTIES_H_
#define HEFL_FEDERATION_PARTIES_H_

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hefl/ckks/scheme.h"
#include "hefl/common/error.h"
#include "hefl/data/dataset.h"
#include "hefl/fedavg/aggregate.h"
#include "hefl/fedavg/sgd.h"
#include "hefl/federation/config.h"
#include "hefl/pack/packed_model.h"
#include "hefl/wire/transport.h"

namespace hefl::federation {

// A round could not complete: a learner failed, disconnected or broke the
// protocol. No partial aggregate is produced.
class RoundAborted : public Error {
 public:
  RoundAborted(std::size_t round, std::size_t learner, const std::string& why)
      : Error("round " + std::to_string(round) + " aborted (learner " +
              std::to_string(learner) + "): " + why),
        round_(round),
        learner_(learner) {}
  std::size_t round() const { return round_; }
  std::size_t learner() const { return learner_; }

 private:
  std::size_t round_;
  std::size_t learner_;
};

// Either an encrypted or a plaintext community/local model.
using ModelPayload = std::variant<pack::PackedModel, pack::Model>;

// Trusted setup party: runs key generation once and hands the public key to
// everyone and the secret key to learners only.
class KeyAuthority {
 public:
  KeyAuthority(const ckks::CkksParams& params, std::uint64_t seed);

  const ckks::PublicKey& public_key() const { return keys_.public_key; }
  const ckks::SecretKey& learner_secret_key() const { return keys_.secret_key; }

  // Encrypts the public initial model and drops it to the level every later
  // community model has, one below the top.
  pack::PackedModel encrypt_initial_model(const pack::Model& model, std::uint64_t seed) const;

 private:
  ckks::KeyPair keys_;
};

struct LearnerPhaseTimes {
  double train_ms = 0;
  double encrypt_ms = 0;
  double decrypt_ms = 0;
};

// Per-round phase times reported by the learners, read by the driver.
class TimingBoard {
 public:
  TimingBoard(std::size_t learners, std::size_t rounds);
  void record(std::size_t learner, std::size_t round, const LearnerPhaseTimes& t);
  // Slowest learner per phase.
  LearnerPhaseTimes max_over_learners(std::size_t round) const;

 private:
  mutable std::mutex mutex_;
  std::size_t rounds_;
  std::vector<LearnerPhaseTimes> times_;
};

class Learner {
 public:
  // Encrypted mode needs both keys; plaintext mode takes none.
  Learner(std::size_t id, data::LabeledDataset data, const FederationConfig& config,
          std::optional<ckks::PublicKey> pk, std::optional<ckks::SecretKey> sk);

  std::size_t id() const { return id_; }
  std::size_t sample_count() const { return data_.size(); }

  // One LearnerOpt step: decrypt, train, encrypt.
  pack::PackedModel learner_opt(const pack::PackedModel& community, std::size_t round,
                                LearnerPhaseTimes* times = nullptr) const;
  pack::Model learner_opt_plain(const pack::Model& community, std::size_t round,
                                LearnerPhaseTimes* times = nullptr) const;

  // Protocol loop over `channel` until Shutdown. Throws on protocol errors.
  void serve(wire::Channel& channel, TimingBoard* board) const;

 private:
  std::size_t id_;
  data::LabeledDataset data_;
  fedavg::TrainerSpec trainer_;
  std::uint64_t seed_;
  std::size_t workers_;
  std::optional<InjectedDisconnect> disconnect_;
  std::optional<ckks::PublicKey> pk_;
  std::optional<ckks::SecretKey> sk_;
  pack::ModelLayout layout_;  // of the local architecture
};

// Holds the public key and the encrypted community model; there is no
// secret key anywhere in its state.
class Controller {
 public:
  Controller(Mode mode, std::optional<ckks::PublicKey> pk, ModelPayload initial,
             std::size_t workers);

  // Reads one Register per channel, acknowledges it and orders the learners
  // by id. Ids must be exactly 0..N-1.
  void register_learners(std::vector<wire::ChannelPtr> channels, bool trace);

  struct RoundReport {
    double aggregate_ms = 0;
    std::uint64_t bytes = 0;
  };

  // Broadcast, collect N locals, aggregate. Throws RoundAborted.
  RoundReport run_round(std::size_t round);

  void shutdown();
  // Closes every connection so blocked learners fail fast.
  void abort();

  const ModelPayload& community() const { return community_; }
  std::size_t learner_count() const { return learners_.size(); }
  std::uint64_t total_bytes() const;
  std::vector<wire::ChannelTrace> traces() const;

 private:
  struct Registered {
    std::uint32_t id;
    std::uint64_t samples;
    wire::ChannelPtr channel;
  };

  std::uint64_t bytes_now() const;

  Mode mode_;
  std::optional<ckks::PublicKey> pk_;
  ModelPayload community_;
  std::size_t workers_;
  std::vector<Registered> learners_;
  std::optional<fedavg::AggregationWeights> weights_;
};

}  // namespace hefl::federation

#endif  // HEFL_FEDERATION_PARTIES_H_
