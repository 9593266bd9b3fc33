// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_FEDAVG_MLP_H_
#define HEFL_FEDAVG_MLP_H_

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hefl/common/error.h"
#include "hefl/lattice/prng.h"
#include "hefl/pack/model.h"

namespace hefl::fedavg {

// Fully connected regressor: ReLU between layers, linear scalar output.
// Layer l (1-based) owns arrays "dense{l}/weight" (out x in) and "dense{l}/bias"
// (out x 1).
struct MlpShape {
  std::vector<std::size_t> widths = {32, 64, 32, 1};

  std::size_t layer_count() const { return widths.size() - 1; }
  friend bool operator==(const MlpShape&, const MlpShape&) = default;
};

// He-uniform weights, zero biases.
pack::Model init_mlp(const MlpShape& shape, std::uint64_t seed);

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

template <typename Scalar>
std::size_t checked_layers(const pack::ModelT<Scalar>& model) {
  if (model.empty() || model.size() % 2 != 0) {
    throw ShapeMismatch("MLP model needs weight/bias pairs");
  }
  return model.size() / 2;
}

}  // namespace detail

// Predictions for a batch given as rows of `inputs`.
template <typename Scalar, typename Derived>
VectorX<Scalar> mlp_predict(const pack::ModelT<Scalar>& model,
                            const Eigen::MatrixBase<Derived>& inputs) {
  const std::size_t layers = detail::checked_layers(model);
  MatrixX<Scalar> a = inputs.transpose().template cast<Scalar>();
  for (std::size_t l = 0; l < layers; ++l) {
    const auto& w = model[2 * l].values;
    const auto& b = model[2 * l + 1].values;
    MatrixX<Scalar> z = w * a;
    z.colwise() += b.col(0);
    if (l + 1 < layers) z = z.cwiseMax(Scalar(0));
    a = std::move(z);
  }
  return a.row(0).transpose();
}

// Loss 1/2 * mean((prediction - target)^2) over the batch. Writes the
// gradient into `grad` (same shapes as the model) when non-null.
template <typename Scalar, typename DerivedX, typename DerivedY>
Scalar mlp_loss_and_gradient(const pack::ModelT<Scalar>& model,
                             const Eigen::MatrixBase<DerivedX>& inputs,
                             const Eigen::MatrixBase<DerivedY>& targets,
                             pack::ModelT<Scalar>* grad) {
  const std::size_t layers = detail::checked_layers(model);
  const auto batch = inputs.rows();
  std::vector<MatrixX<Scalar>> acts;
  acts.reserve(layers + 1);
  acts.push_back(inputs.transpose().template cast<Scalar>());
  for (std::size_t l = 0; l < layers; ++l) {
    MatrixX<Scalar> z = model[2 * l].values * acts.back();
    z.colwise() += model[2 * l + 1].values.col(0);
    if (l + 1 < layers) z = z.cwiseMax(Scalar(0));
    acts.push_back(std::move(z));
  }
  const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> residual =
      acts.back().row(0) - targets.transpose().template cast<Scalar>();
  const Scalar loss = residual.squaredNorm() / (Scalar(2) * Scalar(batch));
  if (grad == nullptr) return loss;

  grad->resize(model.size());
  MatrixX<Scalar> delta = residual / Scalar(batch);
  for (std::size_t l = layers; l-- > 0;) {
    auto& gw = (*grad)[2 * l];
    auto& gb = (*grad)[2 * l + 1];
    gw.name = model[2 * l].name;
    gb.name = model[2 * l + 1].name;
    gw.values = delta * acts[l].transpose();
    gb.values = delta.rowwise().sum();
    if (l > 0) {
      MatrixX<Scalar> back = model[2 * l].values.transpose() * delta;
      // ReLU derivative from the stored post-activation.
      delta = back.cwiseProduct((acts[l].array() > Scalar(0)).template cast<Scalar>().matrix());
    }
  }
  return loss;
}

}  // namespace hefl::fedavg

#endif  // HEFL_FEDAVG_MLP_H_
