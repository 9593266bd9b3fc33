// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_PACK_MODEL_H_
#define HEFL_PACK_MODEL_H_

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace hefl::pack {

template <typename Scalar>
using RowMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// One named parameter array. Vectors are stored as (n x 1).
template <typename Scalar>
struct NamedArray {
  std::string name;
  RowMatrix<Scalar> values;

  friend bool operator==(const NamedArray& a, const NamedArray& b) {
    return a.name == b.name && a.values.rows() == b.values.rows() &&
           a.values.cols() == b.values.cols() && a.values == b.values;
  }
};

// Ordered parameter arrays; order is the packing order.
template <typename Scalar>
using ModelT = std::vector<NamedArray<Scalar>>;

using Model = ModelT<double>;

template <typename To, typename From>
ModelT<To> cast_model(const ModelT<From>& model) {
  ModelT<To> out;
  out.reserve(model.size());
  for (const auto& a : model) out.push_back({a.name, a.values.template cast<To>()});
  return out;
}

// Zero model with the same names and shapes.
template <typename Scalar>
ModelT<Scalar> zeros_like(const ModelT<Scalar>& model) {
  ModelT<Scalar> out;
  out.reserve(model.size());
  for (const auto& a : model) {
    out.push_back({a.name, RowMatrix<Scalar>::Zero(a.values.rows(), a.values.cols())});
  }
  return out;
}

template <typename Scalar>
std::size_t parameter_count(const ModelT<Scalar>& model) {
  std::size_t n = 0;
  for (const auto& a : model) n += static_cast<std::size_t>(a.values.size());
  return n;
}

}  // namespace hefl::pack

#endif  // HEFL_PACK_MODEL_H_
