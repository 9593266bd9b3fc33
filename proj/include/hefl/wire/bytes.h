// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_WIRE_BYTES_H_
#define HEFL_WIRE_BYTES_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hefl/common/error.h"

namespace hefl::wire {

using Bytes = std::vector<std::uint8_t>;

enum class WireErrorCode {
  kTruncated,
  kBadMagic,
  kUnknownType,
  kChecksum,
  kOversize,
  kMalformed,
  kParamsMismatch,
  kDisconnected,
};

std::string_view wire_error_name(WireErrorCode code);

class WireError : public Error {
 public:
  WireError(WireErrorCode code, const std::string& what)
      : Error(std::string(wire_error_name(code)) + ": " + what), code_(code) {}
  WireErrorCode code() const { return code_; }

 private:
  WireErrorCode code_;
};

// Little-endian writer.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u32(std::uint32_t v) { put(v); }
  void u64(std::uint64_t v) { put(v); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v)); }
  void raw(std::span<const std::uint8_t> b) { bytes_.insert(bytes_.end(), b.begin(), b.end()); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes_.insert(bytes_.end(), s.begin(), s.end());
  }
  void u64_array(std::span<const std::uint64_t> words);

  void reserve(std::size_t n) { bytes_.reserve(n); }
  std::size_t size() const { return bytes_.size(); }
  Bytes take() { return std::move(bytes_); }

 private:
  template <typename T>
  void put(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
  }

  Bytes bytes_;
};

// Bounds-checked little-endian reader; every overrun throws kTruncated.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() { return take(1)[0]; }
  std::uint32_t u32() { return get<std::uint32_t>(); }
  std::uint64_t u64() { return get<std::uint64_t>(); }
  double f64() { return std::bit_cast<double>(get<std::uint64_t>()); }
  std::span<const std::uint8_t> raw(std::size_t n) { return take(n); }
  std::string str() {
    const auto n = u32();
    const auto b = take(n);
    return {b.begin(), b.end()};
  }
  void u64_array(std::span<std::uint64_t> out);

  std::size_t remaining() const { return bytes_.size() - pos_; }
  // Throws kMalformed when bytes are left over.
  void expect_end(const char* what) const;

 private:
  std::span<const std::uint8_t> take(std::size_t n) {
    if (n > remaining()) {
      throw WireError(WireErrorCode::kTruncated,
                      "need " + std::to_string(n) + " bytes, have " + std::to_string(remaining()));
    }
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  template <typename T>
  T get() {
    const auto b = take(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(b[i]) << (8 * i);
    return v;
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace hefl::wire

#endif  // HEFL_WIRE_BYTES_H_
