// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_CLI_CONFIG_H_
#define HEFL_CLI_CONFIG_H_

#include <cstdlib>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "hefl/data/partition.h"
#include "hefl/federation/config.h"

namespace hefl::cli {

enum class RunMode { kEncrypted, kPlaintext, kPaired };

std::string_view run_mode_name(RunMode mode);

struct ExperimentConfig {
  federation::FederationConfig federation;
  RunMode mode = RunMode::kPaired;
  std::vector<data::PartitionScheme> envs = {data::PartitionScheme{}};
  std::string out_dir = "results";
  bool validate_only = false;
};

// One tunable value. It is reachable as `key` under `[section]` in a config
// file, as --flag on the command line and as HEFL_<FLAG> in the environment.
struct Setting {
  std::string section;
  std::string key;
  std::string flag;
  std::string help;
  std::function<void(ExperimentConfig&, const std::string&)> apply;  // throws ConfigError
};

const std::vector<Setting>& settings();
const Setting* find_setting(std::string_view section, std::string_view key);

// "batch-size" -> "HEFL_BATCH_SIZE".
std::string env_var_name(std::string_view flag);

// Flat sectioned key/value text:
//   # comment            ; comment
//   [trainer]
//   epochs = 4
// Unknown sections or keys, missing '=', bad values: ConfigError with the
// 1-based line number.
void apply_config_text(ExperimentConfig& config, std::string_view text);
void apply_config_file(ExperimentConfig& config, const std::string& path);

using EnvLookup = std::function<const char*(const char*)>;
void apply_environment(ExperimentConfig& config,
                       const EnvLookup& lookup = [](const char* n) { return std::getenv(n); });

// Final cross-field checks, including the CKKS parameter set.
void validate(const ExperimentConfig& config);

// Resolved configuration, one "key = value" per line, plus the CKKS chain.
std::string describe(const ExperimentConfig& config);

}  // namespace hefl::cli

#endif  // HEFL_CLI_CONFIG_H_
