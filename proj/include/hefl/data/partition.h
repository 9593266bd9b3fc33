// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_DATA_PARTITION_H_
#define HEFL_DATA_PARTITION_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hefl/data/dataset.h"

namespace hefl::data {

inline constexpr double kSkewRatio = 0.7;

enum class Distribution { kIid, kNonIid };
enum class Sizing { kUniform, kSkewed };

struct PartitionScheme {
  Distribution distribution = Distribution::kIid;
  Sizing sizing = Sizing::kUniform;

  friend bool operator==(const PartitionScheme&, const PartitionScheme&) = default;
};

// "uniform_iid", "uniform_noniid", "skewed_noniid", "skewed_iid".
std::string scheme_name(const PartitionScheme& scheme);
PartitionScheme parse_scheme(std::string_view name);  // throws ConfigError

struct PartitionPlan {
  PartitionScheme scheme;
  std::vector<std::vector<std::size_t>> indices;  // per learner

  std::size_t learner_count() const { return indices.size(); }
  std::vector<std::size_t> sizes() const;
};

// Uniform: sizes differ by at most one, larger ones first. Skewed: sizes
// proportional to r^k, rounded by largest remainder, every learner keeps at
// least one example.
std::vector<std::size_t> partition_sizes(std::size_t total, std::size_t learners,
                                         Sizing sizing);

// IID deals a seeded shuffle; Non-IID sorts by target and hands out
// contiguous blocks, youngest block to learner 0.
PartitionPlan partition(const LabeledDataset& dataset, std::size_t learners,
                        const PartitionScheme& scheme, std::uint64_t seed);

// Columns learner,index.
void write_plan_csv(const PartitionPlan& plan, const std::string& path);

}  // namespace hefl::data

#endif  // HEFL_DATA_PARTITION_H_
