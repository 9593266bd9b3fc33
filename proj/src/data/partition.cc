// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/data/partition.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "hefl/common/error.h"
#include "hefl/lattice/prng.h"

namespace hefl::data {

std::string scheme_name(const PartitionScheme& scheme) {
  std::string name = scheme.sizing == Sizing::kUniform ? "uniform_" : "skewed_";
  name += scheme.distribution == Distribution::kIid ? "iid" : "noniid";
  return name;
}

PartitionScheme parse_scheme(std::string_view name) {
  for (auto sizing : {Sizing::kUniform, Sizing::kSkewed}) {
    for (auto dist : {Distribution::kIid, Distribution::kNonIid}) {
      const PartitionScheme s{dist, sizing};
      if (scheme_name(s) == name) return s;
    }
  }
  throw ConfigError("unknown partition scheme '" + std::string(name) + "'");
}

std::vector<std::size_t> PartitionPlan::sizes() const {
  std::vector<std::size_t> out;
  out.reserve(indices.size());
  for (const auto& v : indices) out.push_back(v.size());
  return out;
}

std::vector<std::size_t> partition_sizes(std::size_t total, std::size_t learners,
                                         Sizing sizing) {
  if (learners == 0) throw ValueError("learner count must be positive");
  if (learners > total) {
    throw ValueError("more learners (" + std::to_string(learners) + ") than examples (" +
                     std::to_string(total) + ")");
  }
  std::vector<std::size_t> sizes(learners);
  if (sizing == Sizing::kUniform) {
    for (std::size_t k = 0; k < learners; ++k) {
      sizes[k] = total / learners + (k < total % learners ? 1 : 0);
    }
    return sizes;
  }

  // One example per learner up front, the rest split geometrically.
  const std::size_t spare = total - learners;
  std::vector<double> share(learners);
  double weight = 1.0, norm = 0.0;
  for (std::size_t k = 0; k < learners; ++k, weight *= kSkewRatio) {
    share[k] = weight;
    norm += weight;
  }
  std::vector<double> remainder(learners);
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < learners; ++k) {
    const double exact = static_cast<double>(spare) * share[k] / norm;
    const auto whole = static_cast<std::size_t>(std::floor(exact));
    sizes[k] = 1 + whole;
    remainder[k] = exact - static_cast<double>(whole);
    assigned += whole;
  }
  std::vector<std::size_t> order(learners);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < spare; ++i, ++assigned) ++sizes[order[i]];
  return sizes;
}

PartitionPlan partition(const LabeledDataset& dataset, std::size_t learners,
                        const PartitionScheme& scheme, std::uint64_t seed) {
  const std::size_t total = dataset.size();
  const auto sizes = partition_sizes(total, learners, scheme.sizing);

  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  if (scheme.distribution == Distribution::kIid) {
    lattice::Prng rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  } else {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return dataset.targets[static_cast<Eigen::Index>(a)] <
             dataset.targets[static_cast<Eigen::Index>(b)];
    });
  }

  PartitionPlan plan;
  plan.scheme = scheme;
  plan.indices.resize(learners);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < learners; ++k) {
    plan.indices[k].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                           order.begin() + static_cast<std::ptrdiff_t>(pos + sizes[k]));
    pos += sizes[k];
  }
  return plan;
}

void write_plan_csv(const PartitionPlan& plan, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "learner,index\n";
  for (std::size_t k = 0; k < plan.indices.size(); ++k) {
    for (auto i : plan.indices[k]) out << k << ',' << i << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

}  // namespace hefl::data
