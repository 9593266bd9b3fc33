// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "hefl/ckks/audit.h"
#include "hefl/common/seed.h"
#include "hefl/common/stopwatch.h"
#include "hefl/fedavg/mlp.h"
#include "hefl/federation/parties.h"
#include "hefl/wire/serialize.h"

namespace hefl::federation {

namespace {

constexpr std::uint64_t kSgdStream = 1;
constexpr std::uint64_t kEncryptStream = 2;

}  // namespace

KeyAuthority::KeyAuthority(const ckks::CkksParams& params, std::uint64_t seed)
    : keys_([&] {
        ckks::PartyScope scope(ckks::Party::kKeyAuthority);
        lattice::Prng rng(seed);
        return ckks::keygen(params, rng);
      }()) {}

pack::PackedModel KeyAuthority::encrypt_initial_model(const pack::Model& model,
                                                      std::uint64_t seed) const {
  ckks::PartyScope scope(ckks::Party::kKeyAuthority);
  lattice::Prng rng(seed);
  pack::PackedModel packed = pack::encrypt_model(model, keys_.public_key, rng);
  const std::size_t level = keys_.public_key.params.top_level() - 1;
  for (auto& ct : packed.ciphertexts) ct = ckks::drop_to_level(ct, level);
  return packed;
}

TimingBoard::TimingBoard(std::size_t learners, std::size_t rounds)
    : rounds_(rounds), times_(learners * rounds) {}

void TimingBoard::record(std::size_t learner, std::size_t round, const LearnerPhaseTimes& t) {
  std::lock_guard lock(mutex_);
  times_.at(learner * rounds_ + round) = t;
}

LearnerPhaseTimes TimingBoard::max_over_learners(std::size_t round) const {
  std::lock_guard lock(mutex_);
  LearnerPhaseTimes out;
  for (std::size_t k = 0; k * rounds_ < times_.size(); ++k) {
    const auto& t = times_[k * rounds_ + round];
    out.train_ms = std::max(out.train_ms, t.train_ms);
    out.encrypt_ms = std::max(out.encrypt_ms, t.encrypt_ms);
    out.decrypt_ms = std::max(out.decrypt_ms, t.decrypt_ms);
  }
  return out;
}

Learner::Learner(std::size_t id, data::LabeledDataset data, const FederationConfig& config,
                 std::optional<ckks::PublicKey> pk, std::optional<ckks::SecretKey> sk)
    : id_(id),
      data_(std::move(data)),
      trainer_(config.trainer),
      seed_(config.seed),
      workers_(config.workers),
      disconnect_(config.disconnect),
      pk_(std::move(pk)),
      sk_(std::move(sk)) {
  if (data_.size() == 0) throw EmptyDataset("learner " + std::to_string(id) + " has no data");
  if (pk_.has_value() != sk_.has_value()) {
    throw ValueError("learner needs both keys or neither");
  }
  layout_ = pack::layout_of(fedavg::init_mlp(config.mlp_shape(), 0),
                            pk_ ? pk_->params.slot_count() : pack::kDefaultSlotsPerCiphertext);
}

pack::PackedModel Learner::learner_opt(const pack::PackedModel& community, std::size_t round,
                                       LearnerPhaseTimes* times) const {
  if (!sk_) throw ValueError("learner " + std::to_string(id_) + " holds no keys");
  if (!(community.layout == layout_)) {
    throw ShapeMismatch("learner " + std::to_string(id_) + ": community layout differs");
  }
  ckks::PartyScope scope(ckks::Party::kLearner);
  Stopwatch sw;
  pack::Model model = pack::decrypt_model(community, *sk_, workers_);
  const double decrypt_ms = sw.elapsed_ms();

  sw.reset();
  model = fedavg::local_sgd(std::move(model), data_, trainer_,
                            derive_seed(seed_, {kSgdStream, id_, round}));
  const double train_ms = sw.elapsed_ms();

  sw.reset();
  lattice::Prng rng(derive_seed(seed_, {kEncryptStream, id_, round}));
  pack::PackedModel out = pack::encrypt_model(model, *pk_, rng, workers_);
  if (times != nullptr) *times = {train_ms, sw.elapsed_ms(), decrypt_ms};
  return out;
}

pack::Model Learner::learner_opt_plain(const pack::Model& community, std::size_t round,
                                       LearnerPhaseTimes* times) const {
  if (!layout_.matches(community)) {
    throw ShapeMismatch("learner " + std::to_string(id_) + ": community layout differs");
  }
  Stopwatch sw;
  pack::Model model = fedavg::local_sgd(community, data_, trainer_,
                                        derive_seed(seed_, {kSgdStream, id_, round}));
  if (times != nullptr) *times = {sw.elapsed_ms(), 0, 0};
  return model;
}

void Learner::serve(wire::Channel& channel, TimingBoard* board) const {
  channel.send(wire::Register{static_cast<std::uint32_t>(id_), data_.size()});
  if (!std::holds_alternative<wire::MetricsAck>(channel.receive())) {
    throw Error("learner " + std::to_string(id_) + ": registration not acknowledged");
  }
  for (std::size_t expected = 0;; ++expected) {
    wire::Message msg = channel.receive();
    if (std::holds_alternative<wire::Shutdown>(msg)) return;
    auto* community = std::get_if<wire::CommunityModel>(&msg);
    if (community == nullptr) {
      throw Error("learner " + std::to_string(id_) + ": unexpected message type");
    }
    if (community->round != expected) {
      throw Error("learner " + std::to_string(id_) + ": got round " +
                  std::to_string(community->round) + ", expected " + std::to_string(expected));
    }
    if (disconnect_ && disconnect_->learner == id_ && disconnect_->round == expected) {
      channel.close();
      return;
    }
    LearnerPhaseTimes times;
    wire::Bytes reply;
    if (wire::model_kind(community->model) == wire::ModelKind::kEncrypted) {
      if (!pk_) throw Error("learner " + std::to_string(id_) + ": encrypted model, no keys");
      const auto packed = wire::deserialize_packed_model(community->model, pk_->params);
      reply = wire::serialize_packed_model(learner_opt(packed, expected, &times));
    } else {
      const auto plain = wire::deserialize_plain_model(community->model);
      reply = wire::serialize_plain_model(learner_opt_plain(plain, expected, &times));
    }
    if (board != nullptr) board->record(id_, expected, times);
    channel.send(wire::LocalModel{expected, static_cast<std::uint32_t>(id_), std::move(reply)});
  }
}

}  // namespace hefl::federation
