// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefl/wire/serialize.h"

#include <cmath>

namespace hefl::wire {

std::string_view wire_error_name(WireErrorCode code) {
  switch (code) {
    case WireErrorCode::kTruncated: return "truncated";
    case WireErrorCode::kBadMagic: return "bad magic";
    case WireErrorCode::kUnknownType: return "unknown message type";
    case WireErrorCode::kChecksum: return "checksum mismatch";
    case WireErrorCode::kOversize: return "oversize payload";
    case WireErrorCode::kMalformed: return "malformed";
    case WireErrorCode::kParamsMismatch: return "params mismatch";
    case WireErrorCode::kDisconnected: return "disconnected";
  }
  return "unknown";
}

void ByteWriter::u64_array(std::span<const std::uint64_t> words) {
  if constexpr (std::endian::native == std::endian::little) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(words.data());
    bytes_.insert(bytes_.end(), p, p + words.size_bytes());
  } else {
    for (auto w : words) u64(w);
  }
}

void ByteReader::u64_array(std::span<std::uint64_t> out) {
  const auto b = take(out.size_bytes());
  if constexpr (std::endian::native == std::endian::little) {
    std::memcpy(out.data(), b.data(), b.size());
  } else {
    ByteReader r(b);
    for (auto& w : out) w = r.u64();
  }
}

void ByteReader::expect_end(const char* what) const {
  if (remaining() != 0) {
    throw WireError(WireErrorCode::kMalformed,
                    std::to_string(remaining()) + " trailing bytes after " + what);
  }
}

namespace {

void write_poly(ByteWriter& out, const lattice::RnsPolynomial& p) {
  for (std::size_t i = 0; i < p.residue_count(); ++i) out.u64_array(p.residue(i));
}

lattice::RnsPolynomial read_poly(ByteReader& in, const lattice::RingParamsPtr& ring,
                                 std::size_t residue_count) {
  lattice::RnsPolynomial p(ring, residue_count, lattice::Domain::kEvaluation);
  for (std::size_t i = 0; i < residue_count; ++i) {
    auto words = p.residue(i);
    in.u64_array(words);
    const auto q = ring->modulus(i).value();
    for (auto w : words) {
      if (w >= q) throw WireError(WireErrorCode::kMalformed, "residue word not reduced");
    }
  }
  return p;
}

void check_degree(std::uint64_t degree, const ckks::CkksParams& params) {
  if (degree != params.ring_degree()) {
    throw WireError(WireErrorCode::kParamsMismatch,
                    "ring degree " + std::to_string(degree) + ", expected " +
                        std::to_string(params.ring_degree()));
  }
}

}  // namespace

std::size_t ciphertext_bytes(std::size_t ring_degree, std::size_t residue_count) {
  return kCiphertextHeaderBytes + 2 * residue_count * ring_degree * sizeof(std::uint64_t);
}

void write_ciphertext(ByteWriter& out, const ckks::Ciphertext& ct) {
  out.u64(ct.c0.ring_degree());
  out.u32(static_cast<std::uint32_t>(ct.c0.residue_count()));
  out.u32(static_cast<std::uint32_t>(ct.level()));
  out.f64(ct.scale);
  out.u64(ct.slot_count);
  write_poly(out, ct.c0);
  write_poly(out, ct.c1);
}

ckks::Ciphertext read_ciphertext(ByteReader& in, const ckks::CkksParams& params) {
  check_degree(in.u64(), params);
  const std::uint32_t residues = in.u32();
  const std::uint32_t level = in.u32();
  const double scale = in.f64();
  const std::uint64_t slots = in.u64();
  if (residues == 0 || residues > params.ring()->prime_count()) {
    throw WireError(WireErrorCode::kParamsMismatch,
                    std::to_string(residues) + " residues for a chain of " +
                        std::to_string(params.ring()->prime_count()));
  }
  if (level + 1 != residues) {
    throw WireError(WireErrorCode::kMalformed, "level disagrees with residue count");
  }
  if (!std::isfinite(scale) || scale <= 0) {
    throw WireError(WireErrorCode::kMalformed, "scale must be finite and positive");
  }
  if (slots != params.slot_count()) {
    throw WireError(WireErrorCode::kParamsMismatch, "slot count disagrees");
  }
  auto c0 = read_poly(in, params.ring(), residues);
  auto c1 = read_poly(in, params.ring(), residues);
  return ckks::Ciphertext{std::move(c0), std::move(c1), scale, slots};
}

Bytes serialize_ciphertext(const ckks::Ciphertext& ct) {
  ByteWriter out;
  out.reserve(ciphertext_bytes(ct.c0.ring_degree(), ct.c0.residue_count()));
  write_ciphertext(out, ct);
  return out.take();
}

ckks::Ciphertext deserialize_ciphertext(std::span<const std::uint8_t> bytes,
                                        const ckks::CkksParams& params) {
  ByteReader in(bytes);
  auto ct = read_ciphertext(in, params);
  in.expect_end("ciphertext");
  return ct;
}

Bytes serialize_public_key(const ckks::PublicKey& pk) {
  const auto& ring = *pk.params.ring();
  ByteWriter out;
  out.u64(ring.ring_degree());
  out.u32(static_cast<std::uint32_t>(ring.prime_count()));
  for (const auto& m : ring.moduli()) out.u64(m.value());
  out.u32(static_cast<std::uint32_t>(pk.params.scale_bits()));
  out.u32(static_cast<std::uint32_t>(pk.params.max_depth()));
  write_poly(out, pk.b);
  write_poly(out, pk.a);
  return out.take();
}

ckks::PublicKey deserialize_public_key(std::span<const std::uint8_t> bytes,
                                       const ckks::CkksParams& params) {
  ByteReader in(bytes);
  check_degree(in.u64(), params);
  const auto& ring = params.ring();
  if (in.u32() != ring->prime_count()) {
    throw WireError(WireErrorCode::kParamsMismatch, "chain length disagrees");
  }
  for (const auto& m : ring->moduli()) {
    if (in.u64() != m.value()) throw WireError(WireErrorCode::kParamsMismatch, "prime disagrees");
  }
  if (in.u32() != static_cast<std::uint32_t>(params.scale_bits()) ||
      in.u32() != static_cast<std::uint32_t>(params.max_depth())) {
    throw WireError(WireErrorCode::kParamsMismatch, "scale or depth disagrees");
  }
  auto b = read_poly(in, ring, ring->prime_count());
  auto a = read_poly(in, ring, ring->prime_count());
  in.expect_end("public key");
  return ckks::PublicKey{params, std::move(b), std::move(a)};
}

void write_layout(ByteWriter& out, const pack::ModelLayout& layout) {
  out.u64(layout.slots_per_ciphertext());
  out.u32(static_cast<std::uint32_t>(layout.arrays().size()));
  for (const auto& d : layout.arrays()) {
    out.str(d.name);
    out.u64(d.rows);
    out.u64(d.cols);
  }
}

pack::ModelLayout read_layout(ByteReader& in) {
  const std::uint64_t slots = in.u64();
  const std::uint32_t count = in.u32();
  // Each array takes at least 20 bytes; reject counts the input cannot hold.
  if (count == 0 || count > in.remaining() / 20) {
    throw WireError(WireErrorCode::kMalformed, "bad array count " + std::to_string(count));
  }
  std::vector<pack::ArrayShape> shapes;
  shapes.reserve(count);
  constexpr std::uint64_t kMaxDim = std::uint64_t{1} << 31;
  constexpr std::uint64_t kMaxTotal = std::uint64_t{1} << 34;
  std::uint64_t total = 0;
  for (std::uint32_t i = 0; i < count; ++i) {
    pack::ArrayShape s;
    s.name = in.str();
    s.rows = in.u64();
    s.cols = in.u64();
    if (s.rows == 0 || s.cols == 0 || s.rows > kMaxDim || s.cols > kMaxDim) {
      throw WireError(WireErrorCode::kMalformed, "bad shape for array '" + s.name + "'");
    }
    total += s.rows * s.cols;
    if (total > kMaxTotal) throw WireError(WireErrorCode::kMalformed, "model too large");
    shapes.push_back(std::move(s));
  }
  if (slots == 0 || slots > kMaxDim) throw WireError(WireErrorCode::kMalformed, "bad slot count");
  return pack::ModelLayout::build(std::move(shapes), slots);
}

Bytes serialize_layout(const pack::ModelLayout& layout) {
  ByteWriter out;
  write_layout(out, layout);
  return out.take();
}

pack::ModelLayout deserialize_layout(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  auto layout = read_layout(in);
  in.expect_end("layout");
  return layout;
}

Bytes serialize_packed_model(const pack::PackedModel& model) {
  model.validate();
  ByteWriter out;
  if (!model.ciphertexts.empty()) {
    const auto& ct = model.ciphertexts.front();
    out.reserve(64 + model.ciphertexts.size() *
                         ciphertext_bytes(ct.c0.ring_degree(), ct.c0.residue_count()));
  }
  out.u8(static_cast<std::uint8_t>(ModelKind::kEncrypted));
  write_layout(out, model.layout);
  out.u32(static_cast<std::uint32_t>(model.ciphertexts.size()));
  for (const auto& ct : model.ciphertexts) write_ciphertext(out, ct);
  return out.take();
}

Bytes serialize_plain_model(const pack::Model& model) {
  const auto [layout, flat] = pack::flatten(model);
  ByteWriter out;
  out.u8(static_cast<std::uint8_t>(ModelKind::kPlain));
  write_layout(out, layout);
  for (double v : flat) out.f64(v);
  return out.take();
}

ModelKind model_kind(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw WireError(WireErrorCode::kTruncated, "empty model payload");
  if (bytes[0] > 1) throw WireError(WireErrorCode::kMalformed, "unknown model kind");
  return static_cast<ModelKind>(bytes[0]);
}

pack::PackedModel deserialize_packed_model(std::span<const std::uint8_t> bytes,
                                           const ckks::CkksParams& params) {
  if (model_kind(bytes) != ModelKind::kEncrypted) {
    throw WireError(WireErrorCode::kMalformed, "expected an encrypted model");
  }
  ByteReader in(bytes.subspan(1));
  pack::PackedModel model{read_layout(in), {}};
  const std::uint32_t count = in.u32();
  if (count != model.layout.ciphertext_count()) {
    throw WireError(WireErrorCode::kMalformed, "ciphertext count disagrees with layout");
  }
  model.ciphertexts.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) model.ciphertexts.push_back(read_ciphertext(in, params));
  in.expect_end("packed model");
  try {
    model.validate();
  } catch (const Error& e) {
    throw WireError(WireErrorCode::kMalformed, e.what());
  }
  return model;
}

pack::Model deserialize_plain_model(std::span<const std::uint8_t> bytes) {
  if (model_kind(bytes) != ModelKind::kPlain) {
    throw WireError(WireErrorCode::kMalformed, "expected a plain model");
  }
  ByteReader in(bytes.subspan(1));
  const auto layout = read_layout(in);
  if (in.remaining() != layout.total_parameters() * sizeof(double)) {
    throw WireError(WireErrorCode::kMalformed, "value count disagrees with layout");
  }
  Eigen::VectorXd flat(static_cast<Eigen::Index>(layout.total_parameters()));
  for (auto& v : flat) v = in.f64();
  return pack::unflatten(layout, flat);
}

}  // namespace hefl::wire
