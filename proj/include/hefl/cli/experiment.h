// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_CLI_EXPERIMENT_H_
#define HEFL_CLI_EXPERIMENT_H_

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hefl/cli/config.h"
#include "hefl/federation/runtime.h"

namespace hefl::cli {

// round,mode,env,loss,mae,t_train_ms,t_encrypt_ms,t_aggregate_ms,t_decrypt_ms,bytes
const std::vector<std::string>& metrics_columns();
std::string metrics_header();
std::string metrics_row(const federation::RoundMetrics& m, federation::Mode mode,
                        std::string_view env);

// |a - b| / |b|, with b the plaintext reference.
double relative_gap(double a, double b);

struct EnvSummary {
  std::string env;
  std::optional<double> final_mae_encrypted;
  std::optional<double> final_mae_plaintext;
  // Paired runs only.
  double final_gap = 0;
  double max_round_gap = 0;
  double max_round_gap_after_5 = 0;
};

// Runs every selected environment and mode, writing <out>/<env>.csv (rows
// flushed per round) and, in paired mode, <out>/<env>_summary.csv.
std::vector<EnvSummary> run_experiment(const ExperimentConfig& config, std::ostream& log);

}  // namespace hefl::cli

#endif  // HEFL_CLI_EXPERIMENT_H_
