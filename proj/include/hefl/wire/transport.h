// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HEFL_WIRE_TRANSPORT_H_
#define HEFL_WIRE_TRANSPORT_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hefl/wire/frame.h"

namespace hefl::wire {

// Frames seen by one endpoint, in order.
struct ChannelTrace {
  std::vector<Bytes> sent;
  std::vector<Bytes> received;

  friend bool operator==(const ChannelTrace&, const ChannelTrace&) = default;
};

// Reliable ordered message stream. Each endpoint is used by one thread at a
// time; the two ends may live on different threads.
class Channel {
 public:
  virtual ~Channel() = default;

  void send(const Message& msg);
  // Blocks for the next message. Throws WireError(kDisconnected) when the
  // peer closed before a complete frame arrived.
  Message receive();
  virtual void close() = 0;

  std::uint64_t bytes_sent() const { return bytes_sent_; }
  std::uint64_t bytes_received() const { return bytes_received_; }

  void enable_trace() { tracing_ = true; }
  const ChannelTrace& trace() const { return trace_; }

 protected:
  virtual void write_bytes(const Bytes& frame) = 0;
  // Some bytes, or empty at end of stream.
  virtual Bytes read_chunk() = 0;

 private:
  FrameDecoder decoder_;
  std::uint64_t bytes_sent_ = 0;
  std::uint64_t bytes_received_ = 0;
  bool tracing_ = false;
  ChannelTrace trace_;
};

using ChannelPtr = std::unique_ptr<Channel>;

// Two connected endpoints over in-memory byte queues.
std::pair<ChannelPtr, ChannelPtr> make_inproc_pair();

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;  // 0 picks a free port
};

// "host:port" or ":port" or "host". Throws ConfigError.
Endpoint parse_endpoint(const std::string& text);

class TcpListener {
 public:
  explicit TcpListener(const Endpoint& endpoint);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const;
  ChannelPtr accept();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

ChannelPtr tcp_connect(const Endpoint& endpoint);

}  // namespace hefl::wire

#endif  // HEFL_WIRE_TRANSPORT_H_
