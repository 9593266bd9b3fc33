// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_DATA_DATASET_H_
#define HEFL_DATA_DATASET_H_

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "hefl/pack/model.h"

namespace hefl::data {

inline constexpr double kTargetMin = 45.0;
inline constexpr double kTargetMax = 80.0;
inline constexpr std::size_t kDefaultTrainCount = 8356;
inline constexpr std::size_t kDefaultEvalCount = 2090;
inline constexpr std::size_t kDefaultInputDim = 32;
inline constexpr double kDefaultNoiseSigma = 0.1;

// Examples are rows of `features`; targets are "ages" in [45, 80].
struct LabeledDataset {
  pack::RowMatrix<double> features;
  Eigen::VectorXd targets;
  std::uint64_t seed = 0;

  std::size_t size() const { return static_cast<std::size_t>(targets.size()); }
  std::size_t input_dim() const { return static_cast<std::size_t>(features.cols()); }

  // Rows in the given order.
  LabeledDataset subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const LabeledDataset& a, const LabeledDataset& b) {
    return a.seed == b.seed && a.features.rows() == b.features.rows() &&
           a.features.cols() == b.features.cols() && a.features == b.features &&
           a.targets == b.targets;
  }
};

// Noise-free target for one feature row. The hidden coefficients depend on
// (input_dim, seed) only.
class TargetFunction {
 public:
  TargetFunction(std::size_t input_dim, std::uint64_t seed);

  // 45 + 35 * sigmoid(a.x + 0.5 tanh(2 b.x) + noise)
  double operator()(const Eigen::Ref<const Eigen::RowVectorXd>& x, double noise = 0.0) const;

 private:
  Eigen::RowVectorXd a_;
  Eigen::RowVectorXd b_;
};

// Features ~ N(0, 1). Deterministic under `seed`.
LabeledDataset generate_synthetic(std::size_t count, std::size_t input_dim,
                                  double noise_sigma, std::uint64_t seed);

struct TrainEvalSplit {
  LabeledDataset train;
  LabeledDataset eval;
};

// One generation of train_count + eval_count examples, split in order, so
// both sides share the same target function and never overlap.
TrainEvalSplit generate_train_eval(std::size_t train_count, std::size_t eval_count,
                                   std::size_t input_dim, double noise_sigma,
                                   std::uint64_t seed);

// Columns x0..x{d-1},target.
void write_dataset_csv(const LabeledDataset& dataset, const std::string& path);

}  // namespace hefl::data

#endif  // HEFL_DATA_DATASET_H_
