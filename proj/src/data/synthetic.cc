// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <fstream>
#include <random>

#include "hefl/common/error.h"
#include "hefl/data/dataset.h"
#include "hefl/lattice/prng.h"

namespace hefl::data {

namespace {

// Separate streams for the hidden coefficients and for the samples.
constexpr std::uint64_t kCoefficientStream = 0x7461726765746676ULL;

Eigen::RowVectorXd unit_gaussian_row(std::size_t dim, lattice::Prng& rng) {
  std::normal_distribution<double> normal;
  Eigen::RowVectorXd v(static_cast<Eigen::Index>(dim));
  for (auto& x : v) x = normal(rng);
  return v / v.norm();
}

}  // namespace

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  LabeledDataset out;
  out.seed = seed;
  out.features.resize(static_cast<Eigen::Index>(indices.size()), features.cols());
  out.targets.resize(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = static_cast<Eigen::Index>(indices[i]);
    const auto dst = static_cast<Eigen::Index>(i);
    out.features.row(dst) = features.row(src);
    out.targets[dst] = targets[src];
  }
  return out;
}

TargetFunction::TargetFunction(std::size_t input_dim, std::uint64_t seed) {
  if (input_dim == 0) throw ValueError("input_dim must be positive");
  lattice::Prng rng(seed ^ kCoefficientStream);
  a_ = unit_gaussian_row(input_dim, rng);
  b_ = unit_gaussian_row(input_dim, rng);
}

double TargetFunction::operator()(const Eigen::Ref<const Eigen::RowVectorXd>& x,
                                  double noise) const {
  const double z = a_.dot(x) + 0.5 * std::tanh(2.0 * b_.dot(x)) + noise;
  return kTargetMin + (kTargetMax - kTargetMin) / (1.0 + std::exp(-z));
}

LabeledDataset generate_synthetic(std::size_t count, std::size_t input_dim,
                                  double noise_sigma, std::uint64_t seed) {
  if (count == 0) throw EmptyDataset("generate_synthetic: count must be positive");
  if (!(noise_sigma >= 0) || !std::isfinite(noise_sigma)) {
    throw ValueError("noise_sigma must be finite and >= 0");
  }
  const TargetFunction target(input_dim, seed);
  lattice::Prng rng(seed);
  std::normal_distribution<double> normal;
  LabeledDataset ds;
  ds.seed = seed;
  ds.features.resize(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(input_dim));
  ds.targets.resize(static_cast<Eigen::Index>(count));
  for (Eigen::Index i = 0; i < ds.features.rows(); ++i) {
    for (Eigen::Index j = 0; j < ds.features.cols(); ++j) ds.features(i, j) = normal(rng);
    const double noise = noise_sigma > 0 ? noise_sigma * normal(rng) : 0.0;
    ds.targets[i] = target(ds.features.row(i), noise);
  }
  return ds;
}

TrainEvalSplit generate_train_eval(std::size_t train_count, std::size_t eval_count,
                                   std::size_t input_dim, double noise_sigma,
                                   std::uint64_t seed) {
  if (train_count == 0 || eval_count == 0) {
    throw EmptyDataset("train and eval sets must both be non-empty");
  }
  const LabeledDataset all =
      generate_synthetic(train_count + eval_count, input_dim, noise_sigma, seed);
  std::vector<std::size_t> train_idx(train_count), eval_idx(eval_count);
  for (std::size_t i = 0; i < train_count; ++i) train_idx[i] = i;
  for (std::size_t i = 0; i < eval_count; ++i) eval_idx[i] = train_count + i;
  return {all.subset(train_idx), all.subset(eval_idx)};
}

void write_dataset_csv(const LabeledDataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out.precision(17);
  for (std::size_t j = 0; j < dataset.input_dim(); ++j) out << 'x' << j << ',';
  out << "target\n";
  for (Eigen::Index i = 0; i < dataset.features.rows(); ++i) {
    for (Eigen::Index j = 0; j < dataset.features.cols(); ++j) out << dataset.features(i, j) << ',';
    out << dataset.targets[i] << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

}  // namespace hefl::data
