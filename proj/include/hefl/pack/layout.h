// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_PACK_LAYOUT_H_
#define HEFL_PACK_LAYOUT_H_

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hefl/pack/model.h"

namespace hefl::pack {

inline constexpr std::size_t kDefaultSlotsPerCiphertext = 8192;

struct ArrayShape {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

struct ArrayDescriptor {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t count = 0;             // rows * cols
  std::size_t offset = 0;            // position in the flat vector
  std::size_t start_ciphertext = 0;  // offset / slots_per_ciphertext
  std::size_t start_slot = 0;        // offset % slots_per_ciphertext

  friend bool operator==(const ArrayDescriptor&, const ArrayDescriptor&) = default;
};

// Where every array of a model lives once the arrays are concatenated and
// cut into ciphertext-sized chunks.
class ModelLayout {
 public:
  ModelLayout() = default;

  // Builds descriptors for arrays laid end to end in the given order.
  // Throws EmptyModel for no arrays and ShapeMismatch for empty arrays.
  static ModelLayout build(std::vector<ArrayShape> shapes,
                           std::size_t slots_per_ciphertext);

  const std::vector<ArrayDescriptor>& arrays() const { return arrays_; }
  std::size_t total_parameters() const { return total_parameters_; }
  std::size_t slots_per_ciphertext() const { return slots_per_ciphertext_; }
  std::size_t ciphertext_count() const {
    return (total_parameters_ + slots_per_ciphertext_ - 1) / slots_per_ciphertext_;
  }

  // True when `model` has exactly these names and shapes, in order.
  bool matches(const Model& model) const;

  friend bool operator==(const ModelLayout&, const ModelLayout&) = default;

 private:
  std::vector<ArrayDescriptor> arrays_;
  std::size_t total_parameters_ = 0;
  std::size_t slots_per_ciphertext_ = kDefaultSlotsPerCiphertext;
};

ModelLayout layout_of(const Model& model,
                      std::size_t slots_per_ciphertext = kDefaultSlotsPerCiphertext);

// Row-major concatenation in declaration order.
std::pair<ModelLayout, Eigen::VectorXd> flatten(
    const Model& model, std::size_t slots_per_ciphertext = kDefaultSlotsPerCiphertext);

// Inverse of flatten. Values past total_parameters (chunk padding) are
// ignored; a shorter vector throws ShapeMismatch.
Model unflatten(const ModelLayout& layout, const Eigen::Ref<const Eigen::VectorXd>& flat);

}  // namespace hefl::pack

#endif  // HEFL_PACK_LAYOUT_H_
