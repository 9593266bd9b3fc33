// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/pack/layout.h"

#include "hefl/common/error.h"

namespace hefl::pack {

ModelLayout ModelLayout::build(std::vector<ArrayShape> shapes,
                               std::size_t slots_per_ciphertext) {
  if (shapes.empty()) throw EmptyModel("model has no arrays");
  if (slots_per_ciphertext == 0) throw ValueError("slots_per_ciphertext must be positive");
  ModelLayout layout;
  layout.slots_per_ciphertext_ = slots_per_ciphertext;
  std::size_t offset = 0;
  for (auto& shape : shapes) {
    if (shape.rows == 0 || shape.cols == 0) {
      throw ShapeMismatch("array '" + shape.name + "' is empty");
    }
    ArrayDescriptor d;
    d.name = std::move(shape.name);
    d.rows = shape.rows;
    d.cols = shape.cols;
    d.count = shape.rows * shape.cols;
    d.offset = offset;
    d.start_ciphertext = offset / slots_per_ciphertext;
    d.start_slot = offset % slots_per_ciphertext;
    offset += d.count;
    layout.arrays_.push_back(std::move(d));
  }
  layout.total_parameters_ = offset;
  return layout;
}

bool ModelLayout::matches(const Model& model) const {
  if (model.size() != arrays_.size()) return false;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const auto& d = arrays_[i];
    const auto& a = model[i];
    if (a.name != d.name || static_cast<std::size_t>(a.values.rows()) != d.rows ||
        static_cast<std::size_t>(a.values.cols()) != d.cols) {
      return false;
    }
  }
  return true;
}

ModelLayout layout_of(const Model& model, std::size_t slots_per_ciphertext) {
  std::vector<ArrayShape> shapes;
  shapes.reserve(model.size());
  for (const auto& a : model) {
    shapes.push_back({a.name, static_cast<std::size_t>(a.values.rows()),
                      static_cast<std::size_t>(a.values.cols())});
  }
  return ModelLayout::build(std::move(shapes), slots_per_ciphertext);
}

std::pair<ModelLayout, Eigen::VectorXd> flatten(const Model& model,
                                                std::size_t slots_per_ciphertext) {
  ModelLayout layout = layout_of(model, slots_per_ciphertext);
  Eigen::VectorXd flat(static_cast<Eigen::Index>(layout.total_parameters()));
  for (std::size_t i = 0; i < model.size(); ++i) {
    const auto& d = layout.arrays()[i];
    // RowMatrix storage is already row-major.
    flat.segment(static_cast<Eigen::Index>(d.offset), static_cast<Eigen::Index>(d.count)) =
        Eigen::Map<const Eigen::VectorXd>(model[i].values.data(),
                                          static_cast<Eigen::Index>(d.count));
  }
  return {std::move(layout), std::move(flat)};
}

Model unflatten(const ModelLayout& layout, const Eigen::Ref<const Eigen::VectorXd>& flat) {
  if (static_cast<std::size_t>(flat.size()) < layout.total_parameters()) {
    throw ShapeMismatch("flat vector has " + std::to_string(flat.size()) +
                        " values, layout needs " +
                        std::to_string(layout.total_parameters()));
  }
  Model model;
  model.reserve(layout.arrays().size());
  for (const auto& d : layout.arrays()) {
    RowMatrix<double> values(static_cast<Eigen::Index>(d.rows),
                             static_cast<Eigen::Index>(d.cols));
    Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(d.count)) =
        flat.segment(static_cast<Eigen::Index>(d.offset), static_cast<Eigen::Index>(d.count));
    model.push_back({d.name, std::move(values)});
  }
  return model;
}

}  // namespace hefl::pack
