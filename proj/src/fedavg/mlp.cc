// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/fedavg/mlp.h"

namespace hefl::fedavg {

pack::Model init_mlp(const MlpShape& shape, std::uint64_t seed) {
  if (shape.widths.size() < 2 || shape.widths.back() != 1) {
    throw ShapeMismatch("MLP needs at least two widths and a scalar output");
  }
  lattice::Prng rng(seed);
  pack::Model model;
  for (std::size_t l = 0; l < shape.layer_count(); ++l) {
    const auto in = static_cast<Eigen::Index>(shape.widths[l]);
    const auto out = static_cast<Eigen::Index>(shape.widths[l + 1]);
    if (in == 0 || out == 0) throw ShapeMismatch("MLP widths must be positive");
    const double limit = std::sqrt(6.0 / static_cast<double>(in));
    std::uniform_real_distribution<double> dist(-limit, limit);
    pack::RowMatrix<double> w(out, in);
    for (auto& x : w.reshaped()) x = dist(rng);
    const std::string prefix = "dense" + std::to_string(l + 1);
    model.push_back({prefix + "/weight", std::move(w)});
    model.push_back({prefix + "/bias", pack::RowMatrix<double>::Zero(out, 1)});
  }
  return model;
}

}  // namespace hefl::fedavg
