// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/cli/config.h"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hefl/ckks/params.h"
#include "hefl/common/error.h"

namespace hefl::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename Int>
Int parse_int(const std::string& v, Int min_value) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("'" + v + "' is not an integer");
  }
  if (out < min_value) throw ConfigError("'" + v + "' must be >= " + std::to_string(min_value));
  return out;
}

double parse_double(const std::string& v) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("'" + v + "' is not a number");
  }
  if (used != v.size()) throw ConfigError("'" + v + "' is not a number");
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("'" + v + "' is not a boolean");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty item in list '" + v + "'");
    out.push_back(item);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

RunMode parse_run_mode(const std::string& v) {
  if (v == "encrypted") return RunMode::kEncrypted;
  if (v == "plaintext") return RunMode::kPlaintext;
  if (v == "paired") return RunMode::kPaired;
  throw ConfigError("unknown mode '" + v + "' (encrypted|plaintext|paired)");
}

std::vector<data::PartitionScheme> parse_envs(const std::string& v) {
  if (v == "all") {
    return {data::parse_scheme("uniform_iid"), data::parse_scheme("uniform_noniid"),
            data::parse_scheme("skewed_noniid")};
  }
  std::vector<data::PartitionScheme> out;
  for (const auto& name : split_list(v)) out.push_back(data::parse_scheme(name));
  return out;
}

using Cfg = ExperimentConfig;

std::vector<Setting> build_settings() {
  std::vector<Setting> s;
  auto add = [&](std::string section, std::string key, std::string flag, std::string help,
                 std::function<void(Cfg&, const std::string&)> apply) {
    s.push_back({std::move(section), std::move(key), std::move(flag), std::move(help),
                 std::move(apply)});
  };
  add("experiment", "mode", "mode", "encrypted | plaintext | paired",
      [](Cfg& c, const std::string& v) { c.mode = parse_run_mode(v); });
  add("experiment", "env", "env", "uniform_iid | uniform_noniid | skewed_noniid | all",
      [](Cfg& c, const std::string& v) { c.envs = parse_envs(v); });
  add("experiment", "out", "out", "output directory",
      [](Cfg& c, const std::string& v) {
        if (v.empty()) throw ConfigError("out must not be empty");
        c.out_dir = v;
      });
  add("experiment", "validate_only", "validate-only", "print the resolved config and exit",
      [](Cfg& c, const std::string& v) { c.validate_only = parse_bool(v); });

  add("federation", "learners", "learners", "number of learners",
      [](Cfg& c, const std::string& v) { c.federation.learner_count = parse_int<std::size_t>(v, 1); });
  add("federation", "rounds", "rounds", "federation rounds",
      [](Cfg& c, const std::string& v) { c.federation.rounds = parse_int<std::size_t>(v, 0); });
  add("federation", "seed", "seed", "experiment seed",
      [](Cfg& c, const std::string& v) { c.federation.seed = parse_int<std::uint64_t>(v, 0); });
  add("federation", "transport", "transport", "inproc | tcp",
      [](Cfg& c, const std::string& v) { c.federation.transport = federation::parse_transport(v); });
  add("federation", "listen", "listen", "controller address host:port (tcp)",
      [](Cfg& c, const std::string& v) { c.federation.listen = wire::parse_endpoint(v); });
  add("federation", "record_timings", "record-timings", "fill the timing columns",
      [](Cfg& c, const std::string& v) { c.federation.record_timings = parse_bool(v); });
  add("federation", "workers", "workers", "encryption threads per learner",
      [](Cfg& c, const std::string& v) { c.federation.workers = parse_int<std::size_t>(v, 1); });

  add("trainer", "epochs", "epochs", "local epochs E",
      [](Cfg& c, const std::string& v) { c.federation.trainer.epochs = parse_int<std::size_t>(v, 0); });
  add("trainer", "learning_rate", "lr", "SGD learning rate",
      [](Cfg& c, const std::string& v) {
        const double lr = parse_double(v);
        if (!(lr >= 0)) throw ConfigError("learning rate must be >= 0");
        c.federation.trainer.learning_rate = lr;
      });
  add("trainer", "batch_size", "batch-size", "SGD batch size",
      [](Cfg& c, const std::string& v) { c.federation.trainer.batch_size = parse_int<std::size_t>(v, 1); });

  add("ckks", "slots", "slots", "slots per ciphertext (ring degree / 2)",
      [](Cfg& c, const std::string& v) { c.federation.ckks.slot_count = parse_int<std::size_t>(v, 1); });
  add("ckks", "scale_bits", "scale-bits", "log2 of the encoding scale",
      [](Cfg& c, const std::string& v) { c.federation.ckks.scale_bits = parse_int<int>(v, 1); });
  add("ckks", "depth", "depth", "multiplicative depth",
      [](Cfg& c, const std::string& v) { c.federation.ckks.max_depth = parse_int<int>(v, 1); });
  add("ckks", "security", "security", "128, or 0 to skip the security table",
      [](Cfg& c, const std::string& v) { c.federation.ckks.security_bits = parse_int<int>(v, 0); });
  add("ckks", "base_prime_bits", "base-prime-bits", "bits of the base prime",
      [](Cfg& c, const std::string& v) { c.federation.ckks.base_prime_bits = parse_int<int>(v, 1); });
  add("ckks", "error_sigma", "error-sigma", "error distribution width",
      [](Cfg& c, const std::string& v) { c.federation.ckks.error_sigma = parse_double(v); });

  add("data", "train_count", "train-count", "training examples",
      [](Cfg& c, const std::string& v) { c.federation.data.train_count = parse_int<std::size_t>(v, 1); });
  add("data", "eval_count", "eval-count", "held-out examples",
      [](Cfg& c, const std::string& v) { c.federation.data.eval_count = parse_int<std::size_t>(v, 1); });
  add("data", "input_dim", "input-dim", "feature dimension",
      [](Cfg& c, const std::string& v) { c.federation.data.input_dim = parse_int<std::size_t>(v, 1); });
  add("data", "noise_sigma", "noise-sigma", "target noise",
      [](Cfg& c, const std::string& v) { c.federation.data.noise_sigma = parse_double(v); });

  add("model", "hidden_widths", "hidden-widths", "comma separated hidden layer widths",
      [](Cfg& c, const std::string& v) {
        std::vector<std::size_t> widths;
        for (const auto& item : split_list(v)) widths.push_back(parse_int<std::size_t>(item, 1));
        c.federation.hidden_widths = std::move(widths);
      });
  return s;
}

}  // namespace

std::string_view run_mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::kEncrypted: return "encrypted";
    case RunMode::kPlaintext: return "plaintext";
    case RunMode::kPaired: return "paired";
  }
  return "?";
}

const std::vector<Setting>& settings() {
  static const std::vector<Setting> all = build_settings();
  return all;
}

const Setting* find_setting(std::string_view section, std::string_view key) {
  for (const auto& s : settings()) {
    if (s.section == section && s.key == key) return &s;
  }
  return nullptr;
}

std::string env_var_name(std::string_view flag) {
  std::string out = "HEFL_";
  for (char c : flag) out += c == '-' ? '_' : static_cast<char>(std::toupper(c));
  return out;
}

void apply_config_text(ExperimentConfig& config, std::string_view text) {
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    // Inline comments start at a '#' or ';' preceded by whitespace.
    for (std::size_t i = 1; i < raw.size(); ++i) {
      if ((raw[i] == '#' || raw[i] == ';') && std::isspace(static_cast<unsigned char>(raw[i - 1]))) {
        raw = raw.substr(0, i);
        break;
      }
    }
    const std::string line = trim(raw);
    pos = end + 1;
    ++line_no;
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      bool known = false;
      for (const auto& s : settings()) known = known || s.section == section;
      if (!known) throw ConfigError("unknown section [" + section + "]", line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (section.empty()) throw ConfigError("key '" + key + "' outside any section", line_no);
    const Setting* setting = find_setting(section, key);
    if (setting == nullptr) {
      throw ConfigError("unknown key '" + key + "' in [" + section + "]", line_no);
    }
    try {
      setting->apply(config, value);
    } catch (const ConfigError& e) {
      throw ConfigError(section + "." + key + ": " + e.what(), line_no);
    }
  }
}

void apply_config_file(ExperimentConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    apply_config_text(config, buf.str());
  } catch (const ConfigError& e) {
    throw e.with_context(path);
  }
}

void apply_environment(ExperimentConfig& config, const EnvLookup& lookup) {
  for (const auto& s : settings()) {
    const std::string name = env_var_name(s.flag);
    if (const char* v = lookup(name.c_str())) {
      try {
        s.apply(config, v);
      } catch (const ConfigError& e) {
        throw ConfigError(name + ": " + e.what());
      }
    }
  }
}

void validate(const ExperimentConfig& config) {
  config.federation.validate();
  if (config.envs.empty()) throw ConfigError("no environment selected");
  if (config.mode != RunMode::kPlaintext) {
    try {
      (void)ckks::CkksParams::create(config.federation.ckks);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(std::string("ckks: ") + e.what());
    }
  }
}

std::string describe(const ExperimentConfig& config) {
  std::ostringstream out;
  const auto& f = config.federation;
  out << "mode = " << run_mode_name(config.mode) << '\n';
  out << "env =";
  for (const auto& e : config.envs) out << ' ' << data::scheme_name(e);
  out << '\n';
  out << "out = " << config.out_dir << '\n';
  out << "learners = " << f.learner_count << '\n';
  out << "rounds = " << f.rounds << '\n';
  out << "seed = " << f.seed << '\n';
  out << "transport = " << federation::transport_name(f.transport) << '\n';
  out << "listen = " << f.listen.host << ':' << f.listen.port << '\n';
  out << "epochs = " << f.trainer.epochs << '\n';
  out << "learning_rate = " << f.trainer.learning_rate << '\n';
  out << "batch_size = " << f.trainer.batch_size << '\n';
  out << "train_count = " << f.data.train_count << '\n';
  out << "eval_count = " << f.data.eval_count << '\n';
  out << "input_dim = " << f.data.input_dim << '\n';
  out << "noise_sigma = " << f.data.noise_sigma << '\n';
  out << "mlp_widths =";
  for (auto w : f.mlp_shape().widths) out << ' ' << w;
  out << '\n';
  if (config.mode != RunMode::kPlaintext) {
    out << ckks::CkksParams::create(f.ckks).describe();
  } else {
    out << "slots = " << f.ckks.slot_count << '\n';
    out << "scale_bits = " << f.ckks.scale_bits << '\n';
    out << "depth = " << f.ckks.max_depth << '\n';
    out << "security = " << f.ckks.security_bits << '\n';
  }
  return out.str();
}

}  // namespace hefl::cli
