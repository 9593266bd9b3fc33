// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/federation/runtime.h"

#include <algorithm>
#include <exception>
#include <thread>

#include "hefl/ckks/audit.h"
#include "hefl/common/seed.h"
#include "hefl/common/stopwatch.h"
#include "hefl/fedavg/mlp.h"

namespace hefl::federation {

namespace {

constexpr std::uint64_t kDataStream = 11;
constexpr std::uint64_t kPartitionStream = 12;
constexpr std::uint64_t kInitStream = 13;
constexpr std::uint64_t kKeyStream = 14;
constexpr std::uint64_t kInitEncryptStream = 15;

// Disconnects seen by a learner are usually the echo of an abort elsewhere.
bool is_disconnect(std::exception_ptr e) {
  try {
    std::rethrow_exception(e);
  } catch (const wire::WireError& ex) {
    return ex.code() == wire::WireErrorCode::kDisconnected;
  } catch (...) {
    return false;
  }
}

std::string describe(std::exception_ptr e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception& ex) {
    return ex.what();
  } catch (...) {
    return "unknown error";
  }
}

}  // namespace

FederationData prepare_data(const FederationConfig& config) {
  config.validate();
  FederationData out;
  out.split = data::generate_train_eval(config.data.train_count, config.data.eval_count,
                                        config.data.input_dim, config.data.noise_sigma,
                                        derive_seed(config.seed, {kDataStream}));
  out.plan = data::partition(out.split.train, config.learner_count, config.scheme,
                             derive_seed(config.seed, {kPartitionStream}));
  for (const auto& idx : out.plan.indices) out.shards.push_back(out.split.train.subset(idx));
  return out;
}

fedavg::EvalResult evaluate_community(const pack::Model& model,
                                      const data::LabeledDataset& eval) {
  return fedavg::evaluate(model, eval);
}

FederationResult run_federation(const FederationConfig& config) {
  return run_federation(config, prepare_data(config));
}

FederationResult run_federation(const FederationConfig& config, const FederationData& data,
                                const RoundCallback& on_round) {
  config.validate();
  if (data.shards.size() != config.learner_count) {
    throw ConfigError("data has " + std::to_string(data.shards.size()) + " shards for " +
                      std::to_string(config.learner_count) + " learners");
  }
  FederationResult result;
  result.initial_model = fedavg::init_mlp(config.mlp_shape(), derive_seed(config.seed, {kInitStream}));
  result.final_model = result.initial_model;
  if (config.rounds == 0) return result;

  const bool encrypted = config.mode == Mode::kEncrypted;
  std::optional<ckks::CkksParams> params;
  std::optional<KeyAuthority> authority;
  ModelPayload initial = result.initial_model;
  if (encrypted) {
    params = ckks::CkksParams::create(config.ckks);
    authority.emplace(*params, derive_seed(config.seed, {kKeyStream}));
    initial = authority->encrypt_initial_model(result.initial_model,
                                               derive_seed(config.seed, {kInitEncryptStream}));
  }

  std::vector<Learner> learners;
  learners.reserve(config.learner_count);
  for (std::size_t k = 0; k < config.learner_count; ++k) {
    if (encrypted) {
      learners.emplace_back(k, data.shards[k], config, authority->public_key(),
                            authority->learner_secret_key());
    } else {
      learners.emplace_back(k, data.shards[k], config, std::nullopt, std::nullopt);
    }
  }

  Controller controller(config.mode,
                        encrypted ? std::optional(authority->public_key()) : std::nullopt,
                        std::move(initial), 1);
  TimingBoard board(config.learner_count, config.rounds);

  // Learners run on their own threads, one connection each.
  std::vector<std::exception_ptr> learner_errors(config.learner_count);
  std::vector<std::thread> threads;
  std::vector<wire::ChannelPtr> controller_ends;
  std::optional<wire::TcpListener> listener;
  if (config.transport == TransportKind::kTcp) listener.emplace(config.listen);
  const wire::Endpoint connect_to{config.listen.host, listener ? listener->port() : std::uint16_t{0}};

  auto learner_main = [&](std::size_t k, wire::ChannelPtr channel) {
    try {
      if (!channel) channel = wire::tcp_connect(connect_to);
      learners[k].serve(*channel, &board);
    } catch (...) {
      learner_errors[k] = std::current_exception();
    }
    if (channel) channel->close();
  };
  for (std::size_t k = 0; k < config.learner_count; ++k) {
    if (listener) {
      threads.emplace_back(learner_main, k, nullptr);
    } else {
      auto [controller_end, learner_end] = wire::make_inproc_pair();
      controller_ends.push_back(std::move(controller_end));
      threads.emplace_back(learner_main, k, std::move(learner_end));
    }
  }
  auto join_all = [&] {
    for (auto& t : threads) {
      if (t.joinable()) t.join();
    }
  };
  // A learner-side failure explains a controller-side abort better than
  // "disconnected".
  auto learner_failure = [&](std::size_t round) -> std::optional<RoundAborted> {
    for (std::size_t k = 0; k < learner_errors.size(); ++k) {
      if (learner_errors[k] && !is_disconnect(learner_errors[k])) {
        return RoundAborted(round, k, describe(learner_errors[k]));
      }
    }
    return std::nullopt;
  };

  std::size_t round = 0;
  try {
    if (listener) {
      for (std::size_t k = 0; k < config.learner_count; ++k) {
        controller_ends.push_back(listener->accept());
      }
    }
    controller.register_learners(std::move(controller_ends), config.trace);

    for (; round < config.rounds; ++round) {
      Stopwatch sw;
      const auto report = controller.run_round(round);
      const double round_ms = sw.elapsed_ms();

      pack::Model community;
      if (encrypted) {
        // Designated evaluator: holds the learners' shared key, not the
        // controller.
        ckks::PartyScope scope(ckks::Party::kEvaluator);
        community = pack::decrypt_model(std::get<pack::PackedModel>(controller.community()),
                                        authority->learner_secret_key());
      } else {
        community = std::get<pack::Model>(controller.community());
      }
      const auto eval = evaluate_community(community, data.split.eval);

      RoundMetrics m;
      m.round = round + 1;
      m.loss = eval.loss;
      m.mae = eval.mae;
      m.bytes = report.bytes;
      if (config.record_timings) {
        const auto t = board.max_over_learners(round);
        m.t_train_ms = t.train_ms;
        m.t_encrypt_ms = t.encrypt_ms;
        m.t_decrypt_ms = t.decrypt_ms;
        m.t_aggregate_ms = report.aggregate_ms;
        m.t_transfer_ms = std::max(
            0.0, round_ms - report.aggregate_ms - t.train_ms - t.encrypt_ms - t.decrypt_ms);
      }
      result.rounds.push_back(m);
      if (on_round) on_round(m);
      result.final_model = std::move(community);
    }
    controller.shutdown();
  } catch (const Error& e) {
    controller.abort();
    controller_ends.clear();
    join_all();
    if (auto failure = learner_failure(round)) throw *failure;
    if (dynamic_cast<const RoundAborted*>(&e) != nullptr) throw;
    throw RoundAborted(round, 0, e.what());
  } catch (...) {
    controller.abort();
    controller_ends.clear();
    join_all();
    throw;
  }
  join_all();
  if (auto failure = learner_failure(round)) throw *failure;

  std::uint64_t round_bytes = 0;
  for (const auto& m : result.rounds) round_bytes += m.bytes;
  result.setup_bytes = controller.total_bytes() - round_bytes;
  result.traces = controller.traces();
  return result;
}

}  // namespace hefl::federation
