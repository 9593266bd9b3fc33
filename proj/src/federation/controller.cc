// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "hefl/ckks/audit.h"
#include "hefl/common/stopwatch.h"
#include "hefl/federation/parties.h"
#include "hefl/wire/serialize.h"

namespace hefl::federation {

Controller::Controller(Mode mode, std::optional<ckks::PublicKey> pk, ModelPayload initial,
                       std::size_t workers)
    : mode_(mode), pk_(std::move(pk)), community_(std::move(initial)), workers_(workers) {
  const bool encrypted = std::holds_alternative<pack::PackedModel>(community_);
  if (encrypted != (mode_ == Mode::kEncrypted)) {
    throw ValueError("initial model does not match the controller mode");
  }
  if (encrypted && !pk_) throw ValueError("encrypted mode needs the public key");
}

void Controller::register_learners(std::vector<wire::ChannelPtr> channels, bool trace) {
  ckks::PartyScope scope(ckks::Party::kController);
  learners_.clear();
  for (auto& ch : channels) {
    if (trace) ch->enable_trace();
    const wire::Message msg = ch->receive();
    const auto* reg = std::get_if<wire::Register>(&msg);
    if (reg == nullptr) throw Error("expected Register as the first message");
    if (reg->sample_count == 0) {
      throw Error("learner " + std::to_string(reg->learner_id) + " registered no samples");
    }
    learners_.push_back({reg->learner_id, reg->sample_count, std::move(ch)});
  }
  std::sort(learners_.begin(), learners_.end(),
            [](const Registered& a, const Registered& b) { return a.id < b.id; });
  for (std::size_t k = 0; k < learners_.size(); ++k) {
    if (learners_[k].id != k) {
      throw Error("learner ids must be 0.." + std::to_string(learners_.size() - 1));
    }
  }
  std::vector<double> contributions;
  for (auto& l : learners_) {
    contributions.push_back(static_cast<double>(l.samples));
    l.channel->send(wire::MetricsAck{});
  }
  weights_.emplace(std::move(contributions));
}

Controller::RoundReport Controller::run_round(std::size_t round) {
  ckks::PartyScope scope(ckks::Party::kController);
  if (learners_.empty()) throw Error("no learners registered");
  const std::uint64_t bytes_before = bytes_now();

  const wire::Bytes payload =
      mode_ == Mode::kEncrypted
          ? wire::serialize_packed_model(std::get<pack::PackedModel>(community_))
          : wire::serialize_plain_model(std::get<pack::Model>(community_));
  for (auto& l : learners_) {
    try {
      l.channel->send(wire::CommunityModel{round, payload});
    } catch (const Error& e) {
      throw RoundAborted(round, l.id, e.what());
    }
  }

  std::vector<pack::PackedModel> encrypted;
  std::vector<pack::Model> plain;
  for (auto& l : learners_) {
    try {
      const wire::Message msg = l.channel->receive();
      const auto* local = std::get_if<wire::LocalModel>(&msg);
      if (local == nullptr) throw Error("expected LocalModel");
      if (local->round != round) {
        throw Error("LocalModel for round " + std::to_string(local->round));
      }
      if (local->learner_id != l.id) {
        throw Error("LocalModel claims learner " + std::to_string(local->learner_id));
      }
      if (mode_ == Mode::kEncrypted) {
        auto model = wire::deserialize_packed_model(local->model, pk_->params);
        if (model.level() != pk_->params.top_level()) {
          throw Error("local model is not a fresh top-level encryption");
        }
        encrypted.push_back(std::move(model));
      } else {
        plain.push_back(wire::deserialize_plain_model(local->model));
      }
    } catch (const RoundAborted&) {
      throw;
    } catch (const Error& e) {
      throw RoundAborted(round, l.id, e.what());
    }
  }

  Stopwatch sw;
  if (mode_ == Mode::kEncrypted) {
    community_ = fedavg::aggregate_encrypted(encrypted, *weights_, pk_->params, workers_);
  } else {
    community_ = fedavg::aggregate_plain(plain, *weights_);
  }
  return {sw.elapsed_ms(), bytes_now() - bytes_before};
}

void Controller::shutdown() {
  for (auto& l : learners_) {
    try {
      l.channel->send(wire::Shutdown{});
    } catch (const Error&) {
      // Already gone; nothing left to tell it.
    }
  }
}

void Controller::abort() {
  for (auto& l : learners_) l.channel->close();
}

std::uint64_t Controller::bytes_now() const {
  std::uint64_t total = 0;
  for (const auto& l : learners_) total += l.channel->bytes_sent() + l.channel->bytes_received();
  return total;
}

std::uint64_t Controller::total_bytes() const { return bytes_now(); }

std::vector<wire::ChannelTrace> Controller::traces() const {
  std::vector<wire::ChannelTrace> out;
  for (const auto& l : learners_) out.push_back(l.channel->trace());
  return out;
}

}  // namespace hefl::federation
