// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/wire/transport.h"

#include <boost/asio.hpp>
#include <condition_variable>
#include <deque>

namespace hefl::wire {

namespace asio = boost::asio;
using asio::ip::tcp;

void Channel::send(const Message& msg) {
  Bytes frame = frame_encode(msg);
  bytes_sent_ += frame.size();
  write_bytes(frame);
  if (tracing_) trace_.sent.push_back(std::move(frame));
}

Message Channel::receive() {
  while (true) {
    const std::size_t before = decoder_.buffered();
    if (auto msg = decoder_.next()) {
      const std::size_t used = before - decoder_.buffered();
      bytes_received_ += used;
      if (tracing_) trace_.received.push_back(frame_encode(*msg));
      return std::move(*msg);
    }
    Bytes chunk = read_chunk();
    if (chunk.empty()) {
      throw WireError(WireErrorCode::kDisconnected,
                      "peer closed with " + std::to_string(decoder_.buffered()) +
                          " bytes of a frame pending");
    }
    decoder_.feed(chunk);
  }
}

namespace {

class ByteQueue {
 public:
  void push(Bytes chunk) {
    {
      std::lock_guard lock(mutex_);
      if (closed_) throw WireError(WireErrorCode::kDisconnected, "write on closed channel");
      chunks_.push_back(std::move(chunk));
    }
    ready_.notify_one();
  }

  Bytes pop() {
    std::unique_lock lock(mutex_);
    ready_.wait(lock, [&] { return !chunks_.empty() || closed_; });
    if (chunks_.empty()) return {};
    Bytes chunk = std::move(chunks_.front());
    chunks_.pop_front();
    return chunk;
  }

  void close() {
    {
      std::lock_guard lock(mutex_);
      closed_ = true;
    }
    ready_.notify_all();
  }

 private:
  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<Bytes> chunks_;
  bool closed_ = false;
};

class InprocChannel : public Channel {
 public:
  InprocChannel(std::shared_ptr<ByteQueue> out, std::shared_ptr<ByteQueue> in)
      : out_(std::move(out)), in_(std::move(in)) {}
  ~InprocChannel() override { close(); }

  void close() override {
    // Queued bytes stay readable by the peer.
    out_->close();
    in_->close();
  }

 protected:
  void write_bytes(const Bytes& frame) override { out_->push(frame); }
  Bytes read_chunk() override { return in_->pop(); }

 private:
  std::shared_ptr<ByteQueue> out_;
  std::shared_ptr<ByteQueue> in_;
};

class TcpChannel : public Channel {
 public:
  TcpChannel(std::unique_ptr<asio::io_context> io, tcp::socket socket)
      : io_(std::move(io)), socket_(std::move(socket)) {
    socket_.set_option(tcp::no_delay(true));
  }
  ~TcpChannel() override { close(); }

  void close() override {
    boost::system::error_code ignored;
    socket_.shutdown(tcp::socket::shutdown_both, ignored);
    socket_.close(ignored);
  }

 protected:
  void write_bytes(const Bytes& frame) override {
    boost::system::error_code ec;
    asio::write(socket_, asio::buffer(frame), ec);
    if (ec) throw WireError(WireErrorCode::kDisconnected, ec.message());
  }

  Bytes read_chunk() override {
    Bytes buf(1 << 16);
    boost::system::error_code ec;
    const std::size_t n = socket_.read_some(asio::buffer(buf), ec);
    if (ec) return {};
    buf.resize(n);
    return buf;
  }

 private:
  std::unique_ptr<asio::io_context> io_;
  tcp::socket socket_;
};

}  // namespace

std::pair<ChannelPtr, ChannelPtr> make_inproc_pair() {
  auto a_to_b = std::make_shared<ByteQueue>();
  auto b_to_a = std::make_shared<ByteQueue>();
  return {std::make_unique<InprocChannel>(a_to_b, b_to_a),
          std::make_unique<InprocChannel>(b_to_a, a_to_b)};
}

Endpoint parse_endpoint(const std::string& text) {
  Endpoint ep;
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) {
    if (!text.empty()) ep.host = text;
    return ep;
  }
  if (colon > 0) ep.host = text.substr(0, colon);
  const std::string port = text.substr(colon + 1);
  try {
    std::size_t used = 0;
    const unsigned long value = std::stoul(port, &used);
    if (used != port.size() || value > 65535) throw std::out_of_range(port);
    ep.port = static_cast<std::uint16_t>(value);
  } catch (const std::exception&) {
    throw ConfigError("bad port in listen address '" + text + "'");
  }
  return ep;
}

struct TcpListener::Impl {
  asio::io_context io;
  tcp::acceptor acceptor{io};
};

TcpListener::TcpListener(const Endpoint& endpoint) : impl_(std::make_unique<Impl>()) {
  boost::system::error_code ec;
  const auto address = asio::ip::make_address(endpoint.host, ec);
  if (ec) throw ConfigError("bad listen host '" + endpoint.host + "'");
  const tcp::endpoint ep(address, endpoint.port);
  impl_->acceptor.open(ep.protocol());
  impl_->acceptor.set_option(tcp::acceptor::reuse_address(true));
  impl_->acceptor.bind(ep, ec);
  if (ec) throw WireError(WireErrorCode::kDisconnected, "bind: " + ec.message());
  impl_->acceptor.listen();
}

TcpListener::~TcpListener() = default;

std::uint16_t TcpListener::port() const { return impl_->acceptor.local_endpoint().port(); }

ChannelPtr TcpListener::accept() {
  auto io = std::make_unique<asio::io_context>();
  tcp::socket socket(*io);
  boost::system::error_code ec;
  impl_->acceptor.accept(socket, ec);
  if (ec) throw WireError(WireErrorCode::kDisconnected, "accept: " + ec.message());
  return std::make_unique<TcpChannel>(std::move(io), std::move(socket));
}

ChannelPtr tcp_connect(const Endpoint& endpoint) {
  auto io = std::make_unique<asio::io_context>();
  tcp::socket socket(*io);
  boost::system::error_code ec;
  const auto address = asio::ip::make_address(endpoint.host, ec);
  if (ec) throw ConfigError("bad host '" + endpoint.host + "'");
  socket.connect(tcp::endpoint(address, endpoint.port), ec);
  if (ec) throw WireError(WireErrorCode::kDisconnected, "connect: " + ec.message());
  return std::make_unique<TcpChannel>(std::move(io), std::move(socket));
}

}  // namespace hefl::wire
