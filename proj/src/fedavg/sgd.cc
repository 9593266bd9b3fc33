// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/fedavg/sgd.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hefl/common/error.h"
#include "hefl/fedavg/mlp.h"
#include "hefl/lattice/prng.h"

namespace hefl::fedavg {

void TrainerSpec::validate() const {
  if (batch_size == 0) throw ValueError("batch_size must be >= 1");
  if (!std::isfinite(learning_rate) || learning_rate < 0) {
    throw ValueError("learning_rate must be finite and >= 0");
  }
}

pack::Model local_sgd(pack::Model model, const data::LabeledDataset& data,
                      const TrainerSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (data.size() == 0) throw EmptyDataset("local_sgd: empty dataset");
  lattice::Prng rng(seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  const auto dim = static_cast<Eigen::Index>(data.input_dim());
  pack::RowMatrix<double> batch_x;
  Eigen::VectorXd batch_y;
  pack::Model grad;

  for (std::size_t epoch = 0; epoch < spec.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += spec.batch_size) {
      const auto len =
          static_cast<Eigen::Index>(std::min(spec.batch_size, order.size() - start));
      batch_x.resize(len, dim);
      batch_y.resize(len);
      for (Eigen::Index i = 0; i < len; ++i) {
        const auto src = static_cast<Eigen::Index>(order[start + static_cast<std::size_t>(i)]);
        batch_x.row(i) = data.features.row(src);
        batch_y[i] = data.targets[src];
      }
      const double loss = mlp_loss_and_gradient(model, batch_x, batch_y, &grad);
      if (!std::isfinite(loss)) {
        throw DivergenceError("non-finite loss in epoch " + std::to_string(epoch));
      }
      for (std::size_t a = 0; a < model.size(); ++a) {
        model[a].values -= spec.learning_rate * grad[a].values;
      }
    }
  }
  return model;
}

EvalResult evaluate(const pack::Model& model, const data::LabeledDataset& data) {
  if (data.size() == 0) throw EmptyDataset("evaluate: empty dataset");
  const Eigen::VectorXd err = mlp_predict(model, data.features) - data.targets;
  const double n = static_cast<double>(data.size());
  return {err.squaredNorm() / n, err.cwiseAbs().sum() / n};
}

}  // namespace hefl::fedavg
