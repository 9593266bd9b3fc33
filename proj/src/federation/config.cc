// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/federation/config.h"

#include <cmath>

#include "hefl/ckks/params.h"
#include "hefl/common/error.h"

namespace hefl::federation {

std::string_view mode_name(Mode mode) {
  return mode == Mode::kEncrypted ? "encrypted" : "plaintext";
}

std::string_view transport_name(TransportKind kind) {
  return kind == TransportKind::kInProcess ? "inproc" : "tcp";
}

Mode parse_mode(std::string_view text) {
  if (text == "encrypted") return Mode::kEncrypted;
  if (text == "plaintext") return Mode::kPlaintext;
  throw ConfigError("unknown mode '" + std::string(text) + "'");
}

TransportKind parse_transport(std::string_view text) {
  if (text == "inproc") return TransportKind::kInProcess;
  if (text == "tcp") return TransportKind::kTcp;
  throw ConfigError("unknown transport '" + std::string(text) + "'");
}

fedavg::MlpShape FederationConfig::mlp_shape() const {
  fedavg::MlpShape shape;
  shape.widths.clear();
  shape.widths.push_back(data.input_dim);
  shape.widths.insert(shape.widths.end(), hidden_widths.begin(), hidden_widths.end());
  shape.widths.push_back(1);
  return shape;
}

void FederationConfig::validate() const {
  if (learner_count == 0) throw ConfigError("learners must be >= 1");
  if (learner_count > data.train_count) throw ConfigError("more learners than training examples");
  if (data.train_count == 0 || data.eval_count == 0) {
    throw ConfigError("train and eval counts must be positive");
  }
  if (data.input_dim == 0) throw ConfigError("input_dim must be positive");
  if (!std::isfinite(data.noise_sigma) || data.noise_sigma < 0) {
    throw ConfigError("noise_sigma must be finite and >= 0");
  }
  for (auto w : hidden_widths) {
    if (w == 0) throw ConfigError("hidden widths must be positive");
  }
  if (trainer.batch_size == 0) throw ConfigError("batch_size must be >= 1");
  if (!std::isfinite(trainer.learning_rate) || trainer.learning_rate < 0) {
    throw ConfigError("learning_rate must be finite and >= 0");
  }
  if (workers == 0) throw ConfigError("workers must be >= 1");
  if (mode == Mode::kEncrypted) {
    if (ckks.max_depth < 1) throw ConfigError("encrypted aggregation needs depth >= 1");
    try {
      (void)ckks::CkksParams::create(ckks);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(std::string("ckks: ") + e.what());
    }
  }
}

}  // namespace hefl::federation
