// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_CLI_REPORT_H_
#define HEFL_CLI_REPORT_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "hefl/common/error.h"

namespace hefl::cli {

inline constexpr double kDefaultDivergenceTolerance = 0.02;

class CsvSchemaError : public Error {
 public:
  using Error::Error;
};

struct MetricsRow {
  std::size_t round = 0;
  std::string mode;
  std::string env;
  double loss = 0;
  double mae = 0;
  std::uint64_t bytes = 0;
};

struct MetricsFile {
  std::string label;
  std::vector<MetricsRow> rows;
};

// Columns may come in any order; every metrics column must be present.
MetricsFile parse_metrics_csv(const std::string& text, const std::string& label);
MetricsFile read_metrics_csv(const std::string& path);

struct ComparedRound {
  std::size_t round = 0;
  double mae_a = 0;
  double mae_b = 0;
  double gap = 0;  // relative to b
  bool diverged = false;
};

struct Comparison {
  std::string label_a;
  std::string label_b;
  std::vector<ComparedRound> rounds;  // rounds present in both series
  std::size_t diverged_count() const;
  double max_gap() const;
};

// One file: encrypted vs plaintext within each env. Several files: the first
// file against each other file, series matched by (env, mode).
std::vector<Comparison> compare_metrics(const std::vector<MetricsFile>& files, double tolerance);

void write_report(const std::vector<Comparison>& comparisons, double tolerance, std::ostream& out);

// Whitespace separated: round, then one MAE column per series (NaN where a
// series has no such round).
void write_plot_data(const std::vector<MetricsFile>& files, const std::string& path);

}  // namespace hefl::cli

#endif  // HEFL_CLI_REPORT_H_
