// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "hefl/cli/config.h"
#include "hefl/cli/experiment.h"
#include "hefl/cli/report.h"
#include "hefl/common/error.h"

namespace hefl::cli {
namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hefl_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

int config_error_line(const std::string& text) {
  ExperimentConfig c;
  try {
    apply_config_text(c, text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

ExperimentConfig small_experiment(const fs::path& out) {
  ExperimentConfig c;
  c.federation.data.train_count = 600;
  c.federation.data.eval_count = 150;
  c.federation.trainer.epochs = 1;
  c.federation.learner_count = 4;
  c.federation.record_timings = false;
  c.out_dir = out.string();
  return c;
}

TEST(ConfigTest, DefaultsMatchReferenceSetup) {
  const ExperimentConfig c;
  EXPECT_EQ(c.federation.trainer.epochs, 4u);
  EXPECT_EQ(c.federation.trainer.learning_rate, 5e-5);
  EXPECT_EQ(c.federation.trainer.batch_size, 1u);
  EXPECT_EQ(c.federation.learner_count, 8u);
  EXPECT_EQ(c.federation.ckks.slot_count, 8192u);
  EXPECT_EQ(c.federation.ckks.scale_bits, 52);
  EXPECT_EQ(c.federation.ckks.max_depth, 2);
  EXPECT_EQ(c.federation.ckks.security_bits, 128);
  EXPECT_EQ(c.mode, RunMode::kPaired);
  EXPECT_NO_THROW(validate(c));
}

TEST(ConfigTest, ParsesSectionsAndComments) {
  ExperimentConfig c;
  apply_config_text(c,
                    "# experiment setup\n"
                    "[experiment]\n"
                    "mode = plaintext\n"
                    "env = uniform_noniid, skewed_noniid\n"
                    "\n"
                    "[federation]\n"
                    "learners = 4   ; fewer learners\n"
                    "rounds=7\n"
                    "transport = tcp\n"
                    "listen = 127.0.0.1:5555\n"
                    "[trainer]\n"
                    "learning_rate = 1e-4\n"
                    "[model]\n"
                    "hidden_widths = 16, 8\n");
  EXPECT_EQ(c.mode, RunMode::kPlaintext);
  ASSERT_EQ(c.envs.size(), 2u);
  EXPECT_EQ(data::scheme_name(c.envs[1]), "skewed_noniid");
  EXPECT_EQ(c.federation.learner_count, 4u);
  EXPECT_EQ(c.federation.rounds, 7u);
  EXPECT_EQ(c.federation.transport, federation::TransportKind::kTcp);
  EXPECT_EQ(c.federation.listen.port, 5555);
  EXPECT_EQ(c.federation.trainer.learning_rate, 1e-4);
  EXPECT_EQ(c.federation.hidden_widths, (std::vector<std::size_t>{16, 8}));
}

TEST(ConfigTest, EnvAllExpandsToThreeEnvironments) {
  ExperimentConfig c;
  apply_config_text(c, "[experiment]\nenv = all\n");
  ASSERT_EQ(c.envs.size(), 3u);
  EXPECT_EQ(data::scheme_name(c.envs[0]), "uniform_iid");
  EXPECT_EQ(data::scheme_name(c.envs[1]), "uniform_noniid");
  EXPECT_EQ(data::scheme_name(c.envs[2]), "skewed_noniid");
}

TEST(ConfigTest, ErrorsCarryLineNumbers) {
  EXPECT_EQ(config_error_line("[federation]\nrounds = 3\nbogus = 1\n"), 3);
  EXPECT_EQ(config_error_line("[nowhere]\n"), 1);
  EXPECT_EQ(config_error_line("rounds = 3\n"), 1);
  EXPECT_EQ(config_error_line("[federation]\n\n\nrounds = many\n"), 4);
  EXPECT_EQ(config_error_line("[federation\n"), 1);
  EXPECT_EQ(config_error_line("[federation]\njust text\n"), 2);
  EXPECT_EQ(config_error_line("[experiment]\nenv = uniform_random\n"), 2);
  EXPECT_EQ(config_error_line("[experiment]\nmode = fast\n"), 2);
  EXPECT_EQ(config_error_line("[federation]\ntransport = carrier_pigeon\n"), 2);
}

TEST(ConfigTest, EnvironmentOverridesFileAndFlagsOverrideEnvironment) {
  const fs::path dir = fresh_dir("precedence");
  const fs::path file = dir / "exp.ini";
  std::ofstream(file) << "[federation]\nrounds = 3\nseed = 9\n[trainer]\nepochs = 2\n";

  ExperimentConfig c;
  apply_config_file(c, file.string());
  EXPECT_EQ(c.federation.rounds, 3u);

  const std::map<std::string, std::string> env = {{"HEFL_ROUNDS", "11"}, {"HEFL_ENV", "all"}};
  apply_environment(c, [&](const char* name) -> const char* {
    const auto it = env.find(name);
    return it == env.end() ? nullptr : it->second.c_str();
  });
  EXPECT_EQ(c.federation.rounds, 11u);
  EXPECT_EQ(c.federation.seed, 9u);
  EXPECT_EQ(c.envs.size(), 3u);

  find_setting("federation", "rounds")->apply(c, "13");
  EXPECT_EQ(c.federation.rounds, 13u);
  EXPECT_EQ(c.federation.trainer.epochs, 2u);
}

TEST(ConfigTest, EveryDefaultIsReachableByFlagAndEnvironment) {
  for (const auto& s : settings()) {
    EXPECT_FALSE(s.flag.empty()) << s.section << "." << s.key;
    EXPECT_EQ(find_setting(s.section, s.key), &s);
    EXPECT_EQ(env_var_name(s.flag).rfind("HEFL_", 0), 0u);
  }
  EXPECT_EQ(env_var_name("validate-only"), "HEFL_VALIDATE_ONLY");
  for (const char* flag :
       {"env", "mode", "rounds", "seed", "out", "validate-only", "transport", "listen"}) {
    EXPECT_TRUE(std::any_of(settings().begin(), settings().end(),
                            [&](const Setting& s) { return s.flag == flag; }))
        << flag;
  }
}

TEST(ConfigTest, ValidationRejectsInsecureChain) {
  ExperimentConfig c;
  apply_config_text(c, "[ckks]\nscale_bits = 60\ndepth = 8\n");
  EXPECT_THROW(validate(c), ConfigError);
  c.mode = RunMode::kPlaintext;
  c.federation.mode = federation::Mode::kPlaintext;
  EXPECT_NO_THROW(validate(c));
}

TEST(ConfigTest, DescribeShowsResolvedParameters) {
  const std::string text = describe(ExperimentConfig{});
  EXPECT_NE(text.find("ring_degree = 16384"), std::string::npos);
  EXPECT_NE(text.find("slot_count = 8192"), std::string::npos);
  EXPECT_NE(text.find("scale_bits = 52"), std::string::npos);
  EXPECT_NE(text.find("learners = 8"), std::string::npos);
}

TEST(ExperimentTest, PairedRunWritesBothModes) {
  const fs::path dir = fresh_dir("paired");
  ExperimentConfig c = small_experiment(dir);
  c.federation.rounds = 10;
  std::ostringstream log;
  const auto summaries = run_experiment(c, log);
  ASSERT_EQ(summaries.size(), 1u);
  const std::string csv = slurp(dir / "uniform_iid.csv");
  EXPECT_EQ(count_lines(csv), 1u + 20u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), metrics_header());

  const auto file = parse_metrics_csv(csv, "run");
  std::size_t enc = 0;
  std::size_t plain = 0;
  for (const auto& r : file.rows) (r.mode == "encrypted" ? enc : plain) += 1;
  EXPECT_EQ(enc, 10u);
  EXPECT_EQ(plain, 10u);

  ASSERT_TRUE(summaries[0].final_mae_encrypted && summaries[0].final_mae_plaintext);
  EXPECT_LT(summaries[0].final_gap, 0.01);
  EXPECT_TRUE(fs::exists(dir / "uniform_iid_summary.csv"));

  const auto cmp = compare_metrics({file}, kDefaultDivergenceTolerance);
  ASSERT_EQ(cmp.size(), 1u);
  EXPECT_EQ(cmp[0].rounds.size(), 10u);
  EXPECT_EQ(cmp[0].diverged_count(), 0u);
}

TEST(ExperimentTest, PlaintextCsvIsByteIdenticalAcrossRuns) {
  const fs::path a = fresh_dir("repeat_a");
  const fs::path b = fresh_dir("repeat_b");
  ExperimentConfig c = small_experiment(a);
  c.mode = RunMode::kPlaintext;
  c.federation.rounds = 3;
  std::ostringstream log;
  run_experiment(c, log);
  c.out_dir = b.string();
  run_experiment(c, log);
  const std::string first = slurp(a / "uniform_iid.csv");
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, slurp(b / "uniform_iid.csv"));
}

TEST(ExperimentTest, FailedRunLeavesFlushedPartialCsv) {
  const fs::path dir = fresh_dir("partial");
  ExperimentConfig c = small_experiment(dir);
  c.mode = RunMode::kEncrypted;
  c.federation.rounds = 4;
  c.federation.disconnect = federation::InjectedDisconnect{1, 2};
  std::ostringstream log;
  EXPECT_THROW(run_experiment(c, log), federation::RoundAborted);
  const auto file = read_metrics_csv((dir / "uniform_iid.csv").string());
  EXPECT_EQ(file.rows.size(), 2u);
}

std::string sample_csv() {
  std::string s = metrics_header() + "\n";
  for (int r = 1; r <= 3; ++r) {
    for (const char* mode : {"encrypted", "plaintext"}) {
      s += std::to_string(r) + "," + mode + ",uniform_iid,10,5." + std::to_string(r) +
           ",0,0,0,0,100\n";
    }
  }
  return s;
}

TEST(ReportTest, IdenticalFilesShowNoDivergence) {
  const auto a = parse_metrics_csv(sample_csv(), "a");
  const auto b = parse_metrics_csv(sample_csv(), "b");
  const auto cmp = compare_metrics({a, b}, kDefaultDivergenceTolerance);
  ASSERT_FALSE(cmp.empty());
  for (const auto& c : cmp) {
    EXPECT_EQ(c.max_gap(), 0.0);
    EXPECT_EQ(c.diverged_count(), 0u);
  }
  std::ostringstream out;
  write_report(cmp, kDefaultDivergenceTolerance, out);
  EXPECT_NE(out.str().find("divergent rounds: 0"), std::string::npos);
}

TEST(ReportTest, FlagsDivergentRounds) {
  std::string text = sample_csv();
  const auto pos = text.find("2,plaintext,uniform_iid,10,5.2");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 30, "2,plaintext,uniform_iid,10,9.9");
  const auto cmp = compare_metrics({parse_metrics_csv(text, "x")}, kDefaultDivergenceTolerance);
  ASSERT_EQ(cmp.size(), 1u);
  EXPECT_EQ(cmp[0].diverged_count(), 1u);
  EXPECT_TRUE(cmp[0].rounds[1].diverged);
}

TEST(ReportTest, SchemaErrors) {
  EXPECT_THROW(parse_metrics_csv("round,mode,env,loss,bytes\n1,encrypted,e,1,2\n", "m"),
               CsvSchemaError);
  EXPECT_THROW(parse_metrics_csv("", "m"), CsvSchemaError);
  std::string short_row = metrics_header() + "\n1,encrypted,uniform_iid,10\n";
  EXPECT_THROW(parse_metrics_csv(short_row, "m"), CsvSchemaError);
  std::string bad_number = metrics_header() + "\n1,encrypted,uniform_iid,10,abc,0,0,0,0,1\n";
  EXPECT_THROW(parse_metrics_csv(bad_number, "m"), CsvSchemaError);
}

TEST(ReportTest, PlotDataHasOneLinePerRound) {
  const fs::path dir = fresh_dir("plot");
  const auto file = parse_metrics_csv(sample_csv(), "a");
  write_plot_data({file}, (dir / "plot.dat").string());
  const std::string text = slurp(dir / "plot.dat");
  EXPECT_EQ(count_lines(text), 1u + 3u);
}

}  // namespace
}  // namespace hefl::cli
