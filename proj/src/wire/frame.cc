// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/wire/frame.h"

#include <zlib.h>

#include <algorithm>
#include <limits>

namespace hefl::wire {

namespace {

Bytes encode_payload(const Message& msg) {
  ByteWriter out;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Register>) {
          out.u32(m.learner_id);
          out.u64(m.sample_count);
        } else if constexpr (std::is_same_v<T, CommunityModel>) {
          out.reserve(8 + m.model.size());
          out.u64(m.round);
          out.raw(m.model);
        } else if constexpr (std::is_same_v<T, LocalModel>) {
          out.reserve(12 + m.model.size());
          out.u64(m.round);
          out.u32(m.learner_id);
          out.raw(m.model);
        }
      },
      msg);
  return out.take();
}

Message decode_payload(MessageType type, std::span<const std::uint8_t> payload) {
  ByteReader in(payload);
  auto rest = [&] {
    const auto b = in.raw(in.remaining());
    return Bytes(b.begin(), b.end());
  };
  switch (type) {
    case MessageType::kRegister: {
      Register m;
      m.learner_id = in.u32();
      m.sample_count = in.u64();
      in.expect_end("Register");
      return m;
    }
    case MessageType::kCommunityModel: {
      CommunityModel m;
      m.round = in.u64();
      m.model = rest();
      if (m.model.empty()) throw WireError(WireErrorCode::kMalformed, "empty model payload");
      return m;
    }
    case MessageType::kLocalModel: {
      LocalModel m;
      m.round = in.u64();
      m.learner_id = in.u32();
      m.model = rest();
      if (m.model.empty()) throw WireError(WireErrorCode::kMalformed, "empty model payload");
      return m;
    }
    case MessageType::kMetricsAck:
      in.expect_end("MetricsAck");
      return MetricsAck{};
    case MessageType::kShutdown:
      in.expect_end("Shutdown");
      return Shutdown{};
  }
  throw WireError(WireErrorCode::kUnknownType, "type " + std::to_string(int(type)));
}

bool known_type(std::uint8_t t) { return t >= 1 && t <= 5; }

}  // namespace

MessageType message_type(const Message& msg) {
  return static_cast<MessageType>(msg.index() + 1);
}

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  const std::uint8_t* p = bytes.data();
  std::size_t left = bytes.size();
  while (left > 0) {
    const auto n = static_cast<uInt>(std::min<std::size_t>(left, std::numeric_limits<uInt>::max()));
    crc = crc32(crc, p, n);
    p += n;
    left -= n;
  }
  return static_cast<std::uint32_t>(crc);
}

Bytes frame_encode(const Message& msg) {
  const Bytes payload = encode_payload(msg);
  ByteWriter out;
  out.reserve(kFrameOverheadBytes + payload.size());
  out.raw(kMagic);
  out.u8(static_cast<std::uint8_t>(message_type(msg)));
  out.u64(payload.size());
  out.raw(payload);
  out.u32(crc32_of(payload));
  return out.take();
}

DecodeResult frame_decode(std::span<const std::uint8_t> stream, std::uint64_t payload_cap) {
  // Header fields are validated as soon as they arrive.
  const std::size_t magic_seen = std::min(stream.size(), kMagic.size());
  if (!std::equal(stream.begin(), stream.begin() + static_cast<std::ptrdiff_t>(magic_seen),
                  kMagic.begin())) {
    throw WireError(WireErrorCode::kBadMagic, "frame does not start with FHE1");
  }
  if (stream.size() < 5) return {};
  if (!known_type(stream[4])) {
    throw WireError(WireErrorCode::kUnknownType, "type " + std::to_string(stream[4]));
  }
  if (stream.size() < kFrameHeaderBytes) return {};
  ByteReader header(stream.subspan(5, 8));
  const std::uint64_t length = header.u64();
  if (length > payload_cap) {
    throw WireError(WireErrorCode::kOversize, "payload of " + std::to_string(length) +
                                                  " bytes exceeds cap " +
                                                  std::to_string(payload_cap));
  }
  if (stream.size() - kFrameHeaderBytes < length + 4) return {};
  const auto payload = stream.subspan(kFrameHeaderBytes, static_cast<std::size_t>(length));
  ByteReader trailer(stream.subspan(kFrameHeaderBytes + payload.size(), 4));
  const std::size_t consumed = kFrameOverheadBytes + payload.size();
  if (trailer.u32() != crc32_of(payload)) {
    throw WireError(WireErrorCode::kChecksum, "payload crc32 mismatch");
  }
  return {decode_payload(static_cast<MessageType>(stream[4]), payload), consumed};
}

void FrameDecoder::feed(std::span<const std::uint8_t> bytes) {
  if (start_ > 0 && start_ >= buffer_.size() / 2) {
    buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(start_));
    start_ = 0;
  }
  buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::optional<Message> FrameDecoder::next() {
  if (failed_) throw WireError(WireErrorCode::kMalformed, "decoder failed earlier");
  const std::span<const std::uint8_t> pending(buffer_.data() + start_, buffer_.size() - start_);
  try {
    auto result = frame_decode(pending, payload_cap_);
    start_ += result.consumed;
    return std::move(result.message);
  } catch (const WireError& e) {
    if (e.code() == WireErrorCode::kChecksum || e.code() == WireErrorCode::kMalformed ||
        e.code() == WireErrorCode::kTruncated) {
      // The frame boundary is known; skip it and stay in sync.
      ByteReader header(pending.subspan(5, 8));
      start_ += kFrameOverheadBytes + static_cast<std::size_t>(header.u64());
    } else {
      failed_ = true;
    }
    throw;
  }
}

}  // namespace hefl::wire
