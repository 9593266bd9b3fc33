// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

// hefl run    : paired encrypted/plaintext FedAvg experiments
// hefl report : compare metrics CSVs round by round

#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "hefl/cli/config.h"
#include "hefl/cli/experiment.h"
#include "hefl/cli/report.h"

namespace {

using hefl::cli::ExperimentConfig;

int run_command(const std::string& config_path, const std::map<std::string, std::string>& flags,
                bool validate_only) {
  ExperimentConfig config;
  try {
    // defaults < config file < environment < flags
    std::string path = config_path;
    if (path.empty()) {
      if (const char* env = std::getenv("HEFL_CONFIG")) path = env;
    }
    if (!path.empty()) hefl::cli::apply_config_file(config, path);
    hefl::cli::apply_environment(config);
    for (const auto& [flag, value] : flags) {
      for (const auto& s : hefl::cli::settings()) {
        if (s.flag == flag) s.apply(config, value);
      }
    }
    if (validate_only) config.validate_only = true;
    hefl::cli::validate(config);
  } catch (const hefl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }

  if (config.validate_only) {
    std::cout << hefl::cli::describe(config);
    return 0;
  }
  try {
    const auto summaries = hefl::cli::run_experiment(config, std::cout);
    for (const auto& s : summaries) {
      std::cout << s.env;
      if (s.final_mae_encrypted) std::cout << " encrypted_mae=" << *s.final_mae_encrypted;
      if (s.final_mae_plaintext) std::cout << " plaintext_mae=" << *s.final_mae_plaintext;
      if (s.final_mae_encrypted && s.final_mae_plaintext) {
        std::cout << " rel_gap=" << s.final_gap << " max_round_gap=" << s.max_round_gap;
      }
      std::cout << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int report_command(const std::vector<std::string>& paths, const std::string& plot,
                   double tolerance) {
  try {
    std::vector<hefl::cli::MetricsFile> files;
    for (const auto& p : paths) files.push_back(hefl::cli::read_metrics_csv(p));
    hefl::cli::write_report(hefl::cli::compare_metrics(files, tolerance), tolerance, std::cout);
    if (!plot.empty()) hefl::cli::write_plot_data(files, plot);
  } catch (const hefl::cli::CsvSchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "report failed: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Federated averaging with CKKS-encrypted aggregation"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run federation experiments");
  std::string config_path;
  bool validate_only = false;
  run->add_option("--config", config_path, "config file (also HEFL_CONFIG)");
  run->add_flag("--validate-only", validate_only, "print the resolved config and exit");
  std::map<std::string, std::string> flag_values;
  std::vector<std::pair<std::string, CLI::Option*>> flag_options;
  for (const auto& s : hefl::cli::settings()) {
    if (s.flag == "validate-only") continue;
    auto* opt = run->add_option("--" + s.flag, flag_values[s.flag],
                                s.help + " (" + hefl::cli::env_var_name(s.flag) + ")");
    flag_options.emplace_back(s.flag, opt);
  }

  auto* report = app.add_subcommand("report", "compare metrics CSVs");
  std::vector<std::string> csv_paths;
  std::string plot_path;
  double tolerance = hefl::cli::kDefaultDivergenceTolerance;
  report->add_option("csv", csv_paths, "metrics CSV files")->required();
  report->add_option("--plot", plot_path, "write plot data here");
  report->add_option("--tolerance", tolerance, "relative MAE gap that counts as divergence");

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    std::map<std::string, std::string> given;
    for (const auto& [flag, opt] : flag_options) {
      if (opt->count() > 0) given[flag] = flag_values[flag];
    }
    return run_command(config_path, given, validate_only);
  }
  return report_command(csv_paths, plot_path, tolerance);
}
