// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/cli/report.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "hefl/cli/experiment.h"

namespace hefl::cli {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_cell(const std::string& cell, const std::string& where) {
  T value{};
  if constexpr (std::is_floating_point_v<T>) {
    std::size_t used = 0;
    try {
      value = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cell.size()) throw CsvSchemaError(where + ": bad number '" + cell + "'");
  } else {
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
      throw CsvSchemaError(where + ": bad integer '" + cell + "'");
    }
  }
  return value;
}

using SeriesKey = std::pair<std::string, std::string>;  // env, mode

std::map<SeriesKey, std::map<std::size_t, double>> series_of(const MetricsFile& f) {
  std::map<SeriesKey, std::map<std::size_t, double>> out;
  for (const auto& r : f.rows) out[{r.env, r.mode}][r.round] = r.mae;
  return out;
}

Comparison compare_series(std::string label_a, const std::map<std::size_t, double>& a,
                          std::string label_b, const std::map<std::size_t, double>& b,
                          double tolerance) {
  Comparison c{std::move(label_a), std::move(label_b), {}};
  for (const auto& [round, mae_a] : a) {
    const auto it = b.find(round);
    if (it == b.end()) continue;
    const double gap = relative_gap(mae_a, it->second);
    c.rounds.push_back({round, mae_a, it->second, gap, !(gap <= tolerance)});
  }
  return c;
}

}  // namespace

MetricsFile parse_metrics_csv(const std::string& text, const std::string& label) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw CsvSchemaError(label + ": empty file");
  const auto header = split_csv_line(line);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < header.size(); ++i) index[header[i]] = i;
  for (const auto& col : metrics_columns()) {
    if (!index.count(col)) throw CsvSchemaError(label + ": missing column '" + col + "'");
  }
  MetricsFile file{label, {}};
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    const std::string where = label + ":" + std::to_string(line_no);
    if (cells.size() != header.size()) {
      throw CsvSchemaError(where + ": expected " + std::to_string(header.size()) + " cells, got " +
                           std::to_string(cells.size()));
    }
    MetricsRow row;
    row.round = parse_cell<std::size_t>(cells[index["round"]], where);
    row.mode = cells[index["mode"]];
    row.env = cells[index["env"]];
    row.loss = parse_cell<double>(cells[index["loss"]], where);
    row.mae = parse_cell<double>(cells[index["mae"]], where);
    row.bytes = parse_cell<std::uint64_t>(cells[index["bytes"]], where);
    for (const char* timing : {"t_train_ms", "t_encrypt_ms", "t_aggregate_ms", "t_decrypt_ms"}) {
      (void)parse_cell<double>(cells[index[timing]], where);
    }
    file.rows.push_back(std::move(row));
  }
  return file;
}

MetricsFile read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvSchemaError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_metrics_csv(buf.str(), path);
}

std::size_t Comparison::diverged_count() const {
  return static_cast<std::size_t>(
      std::count_if(rounds.begin(), rounds.end(), [](const auto& r) { return r.diverged; }));
}

double Comparison::max_gap() const {
  double g = 0;
  for (const auto& r : rounds) g = std::max(g, r.gap);
  return g;
}

std::vector<Comparison> compare_metrics(const std::vector<MetricsFile>& files, double tolerance) {
  std::vector<Comparison> out;
  if (files.empty()) return out;
  if (files.size() == 1) {
    const auto series = series_of(files[0]);
    for (const auto& [key, enc] : series) {
      if (key.second != "encrypted") continue;
      const auto plain = series.find({key.first, "plaintext"});
      if (plain == series.end()) continue;
      out.push_back(compare_series(key.first + "/encrypted", enc, key.first + "/plaintext",
                                   plain->second, tolerance));
    }
    return out;
  }
  const auto base = series_of(files[0]);
  for (std::size_t i = 1; i < files.size(); ++i) {
    const auto other = series_of(files[i]);
    for (const auto& [key, a] : base) {
      const auto b = other.find(key);
      if (b == other.end()) continue;
      const std::string suffix = ":" + key.first + "/" + key.second;
      out.push_back(compare_series(files[0].label + suffix, a, files[i].label + suffix,
                                   b->second, tolerance));
    }
  }
  return out;
}

void write_report(const std::vector<Comparison>& comparisons, double tolerance,
                  std::ostream& out) {
  if (comparisons.empty()) {
    out << "no comparable series\n";
    return;
  }
  std::size_t total_diverged = 0;
  for (const auto& c : comparisons) {
    out << c.label_a << " vs " << c.label_b << '\n';
    out << std::setw(6) << "round" << std::setw(16) << "mae_a" << std::setw(16) << "mae_b"
        << std::setw(14) << "rel_gap" << "  status\n";
    for (const auto& r : c.rounds) {
      out << std::setw(6) << r.round << std::setw(16) << std::setprecision(8) << r.mae_a
          << std::setw(16) << r.mae_b << std::setw(14) << std::setprecision(3) << r.gap << "  "
          << (r.diverged ? "DIVERGED" : "within tolerance") << '\n';
    }
    out << std::setprecision(6) << "max relative gap " << c.max_gap() << ", "
        << c.diverged_count() << " of " << c.rounds.size() << " rounds beyond " << tolerance
        << "\n\n";
    total_diverged += c.diverged_count();
  }
  out << "divergent rounds: " << total_diverged << '\n';
}

void write_plot_data(const std::vector<MetricsFile>& files, const std::string& path) {
  std::vector<std::string> names;
  std::vector<std::map<std::size_t, double>> columns;
  std::size_t max_round = 0;
  for (const auto& f : files) {
    for (const auto& [key, s] : series_of(f)) {
      names.push_back((files.size() > 1 ? f.label + ":" : "") + key.first + "/" + key.second);
      columns.push_back(s);
      if (!s.empty()) max_round = std::max(max_round, s.rbegin()->first);
    }
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "# round";
  for (const auto& n : names) out << ' ' << n;
  out << '\n' << std::setprecision(10);
  for (std::size_t r = 0; r <= max_round; ++r) {
    bool any = false;
    for (const auto& c : columns) any = any || c.count(r);
    if (!any) continue;
    out << r;
    for (const auto& c : columns) {
      const auto it = c.find(r);
      out << ' ';
      if (it == c.end()) {
        out << "NaN";
      } else {
        out << it->second;
      }
    }
    out << '\n';
  }
}

}  // namespace hefl::cli
