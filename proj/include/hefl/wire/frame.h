// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_WIRE_FRAME_H_
#define HEFL_WIRE_FRAME_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>

#include "hefl/wire/bytes.h"

// Frame: "FHE1" | type u8 | payload_length u64 | payload | crc32(payload) u32

namespace hefl::wire {

inline constexpr std::array<std::uint8_t, 4> kMagic = {'F', 'H', 'E', '1'};
inline constexpr std::size_t kFrameHeaderBytes = 13;
inline constexpr std::size_t kFrameOverheadBytes = 17;
inline constexpr std::uint64_t kDefaultPayloadCap = std::uint64_t{2} << 30;

enum class MessageType : std::uint8_t {
  kRegister = 1,
  kCommunityModel = 2,
  kLocalModel = 3,
  kMetricsAck = 4,
  kShutdown = 5,
};

struct Register {
  std::uint32_t learner_id = 0;
  std::uint64_t sample_count = 0;
  friend bool operator==(const Register&, const Register&) = default;
};

// `model` holds a serialized model payload (see serialize.h).
struct CommunityModel {
  std::uint64_t round = 0;
  Bytes model;
  friend bool operator==(const CommunityModel&, const CommunityModel&) = default;
};

struct LocalModel {
  std::uint64_t round = 0;
  std::uint32_t learner_id = 0;
  Bytes model;
  friend bool operator==(const LocalModel&, const LocalModel&) = default;
};

struct MetricsAck {
  friend bool operator==(const MetricsAck&, const MetricsAck&) = default;
};

struct Shutdown {
  friend bool operator==(const Shutdown&, const Shutdown&) = default;
};

using Message = std::variant<Register, CommunityModel, LocalModel, MetricsAck, Shutdown>;

MessageType message_type(const Message& msg);

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes);

Bytes frame_encode(const Message& msg);

struct DecodeResult {
  std::optional<Message> message;  // empty when more bytes are needed
  std::size_t consumed = 0;
};

// Decodes at most one frame from the front of `stream`. Never reads past
// the declared payload. Throws WireError for bad magic, unknown type,
// oversize, checksum and malformed payloads.
DecodeResult frame_decode(std::span<const std::uint8_t> stream,
                          std::uint64_t payload_cap = kDefaultPayloadCap);

// Incremental decoder for a byte stream. A checksum or payload error
// discards just that frame, so the stream stays usable; bad magic, unknown
// type and oversize leave the decoder failed.
class FrameDecoder {
 public:
  explicit FrameDecoder(std::uint64_t payload_cap = kDefaultPayloadCap)
      : payload_cap_(payload_cap) {}

  void feed(std::span<const std::uint8_t> bytes);
  std::optional<Message> next();

  std::size_t buffered() const { return buffer_.size() - start_; }
  bool failed() const { return failed_; }

 private:
  std::uint64_t payload_cap_;
  Bytes buffer_;
  std::size_t start_ = 0;
  bool failed_ = false;
};

}  // namespace hefl::wire

#endif  // HEFL_WIRE_FRAME_H_
