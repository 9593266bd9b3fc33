// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/cli/experiment.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hefl/common/error.h"

namespace hefl::cli {

const std::vector<std::string>& metrics_columns() {
  static const std::vector<std::string> cols = {
      "round",          "mode",         "env",           "loss",
      "mae",            "t_train_ms",   "t_encrypt_ms",  "t_aggregate_ms",
      "t_decrypt_ms",   "bytes"};
  return cols;
}

std::string metrics_header() {
  std::string out;
  for (const auto& c : metrics_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

std::string metrics_row(const federation::RoundMetrics& m, federation::Mode mode,
                        std::string_view env) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << m.round << ',' << federation::mode_name(mode) << ',' << env << ',' << m.loss << ','
      << m.mae << ',' << std::setprecision(6) << m.t_train_ms << ',' << m.t_encrypt_ms << ','
      << m.t_aggregate_ms << ',' << m.t_decrypt_ms << ',' << m.bytes;
  return out.str();
}

double relative_gap(double a, double b) {
  const double denom = std::max(std::abs(b), 1e-300);
  return std::abs(a - b) / denom;
}

namespace {

std::vector<federation::Mode> modes_of(RunMode mode) {
  switch (mode) {
    case RunMode::kEncrypted: return {federation::Mode::kEncrypted};
    case RunMode::kPlaintext: return {federation::Mode::kPlaintext};
    case RunMode::kPaired: return {federation::Mode::kEncrypted, federation::Mode::kPlaintext};
  }
  return {};
}

}  // namespace

std::vector<EnvSummary> run_experiment(const ExperimentConfig& config, std::ostream& log) {
  validate(config);
  std::filesystem::create_directories(config.out_dir);
  std::vector<EnvSummary> summaries;

  for (const auto& scheme : config.envs) {
    const std::string env = data::scheme_name(scheme);
    federation::FederationConfig fed = config.federation;
    fed.scheme = scheme;
    const auto data = federation::prepare_data(fed);

    const std::string csv_path = (std::filesystem::path(config.out_dir) / (env + ".csv")).string();
    std::ofstream csv(csv_path);
    if (!csv) throw Error("cannot write " + csv_path);
    csv << metrics_header() << '\n' << std::flush;

    EnvSummary summary;
    summary.env = env;
    std::vector<double> mae_enc, mae_plain;
    for (const auto mode : modes_of(config.mode)) {
      fed.mode = mode;
      log << env << ": " << federation::mode_name(mode) << " run, " << fed.rounds
          << " rounds\n";
      auto& trace = mode == federation::Mode::kEncrypted ? mae_enc : mae_plain;
      const auto result = federation::run_federation(fed, data, [&](const auto& m) {
        csv << metrics_row(m, mode, env) << '\n' << std::flush;
        trace.push_back(m.mae);
        log << "  round " << m.round << " mae " << m.mae << '\n';
      });
      if (!result.rounds.empty()) {
        (mode == federation::Mode::kEncrypted ? summary.final_mae_encrypted
                                              : summary.final_mae_plaintext) =
            result.rounds.back().mae;
      }
    }

    if (config.mode == RunMode::kPaired && !mae_enc.empty()) {
      summary.final_gap = relative_gap(mae_enc.back(), mae_plain.back());
      for (std::size_t r = 0; r < mae_enc.size(); ++r) {
        const double gap = relative_gap(mae_enc[r], mae_plain[r]);
        summary.max_round_gap = std::max(summary.max_round_gap, gap);
        if (r + 1 > 5) summary.max_round_gap_after_5 = std::max(summary.max_round_gap_after_5, gap);
      }
      const std::string path =
          (std::filesystem::path(config.out_dir) / (env + "_summary.csv")).string();
      std::ofstream out(path);
      out << std::setprecision(17);
      out << "env,final_mae_encrypted,final_mae_plaintext,final_mae_rel_gap,"
             "max_round_rel_gap,max_round_rel_gap_after_round_5\n";
      out << env << ',' << *summary.final_mae_encrypted << ',' << *summary.final_mae_plaintext
          << ',' << summary.final_gap << ',' << summary.max_round_gap << ','
          << summary.max_round_gap_after_5 << '\n';
      if (!out) throw Error("cannot write " + path);
      log << env << ": final MAE encrypted " << *summary.final_mae_encrypted << ", plaintext "
          << *summary.final_mae_plaintext << ", relative gap " << summary.final_gap
          << ", max per-round gap " << summary.max_round_gap << '\n';
    }
    summaries.push_back(std::move(summary));
  }
  return summaries;
}

}  // namespace hefl::cli
