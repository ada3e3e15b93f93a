// Copyright (c) the liftcodec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "liftcodec/coding/bitstream.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <string>

#include "liftcodec/coding/side_info.hpp"
#include "liftcodec/coding/spatial.hpp"
#include "liftcodec/coding/subband.hpp"

namespace liftcodec {
namespace {

constexpr std::size_t kHeaderFieldBytes = 40;

std::uint32_t crc_of(std::span<const std::uint8_t> bytes) {
  return static_cast<std::uint32_t>(
      crc32(0L, bytes.data(), static_cast<uInt>(bytes.size())));
}

class Writer {
 public:
  void u8(std::uint32_t v) { out_.push_back(static_cast<std::uint8_t>(v)); }
  void u16(std::uint32_t v) {
    u8(v & 0xFF);
    u8(v >> 8);
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8((v >> (8 * i)) & 0xFF);
  }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    u32(static_cast<std::uint32_t>(bits));
    u32(static_cast<std::uint32_t>(bits >> 32));
  }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void section(std::span<const std::uint8_t> b) {
    u32(static_cast<std::uint32_t>(b.size()));
    bytes(b);
  }
  std::size_t size() const { return out_.size(); }
  std::vector<std::uint8_t>& buffer() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return in_.size() - pos_; }

  std::uint32_t u8() { return in_[pos_++]; }
  std::uint32_t u16() {
    const std::uint32_t v = in_[pos_] | (in_[pos_ + 1] << 8);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  double f64() {
    const std::uint64_t lo = u32();
    const std::uint64_t hi = u32();
    return std::bit_cast<double>(lo | (hi << 32));
  }

  void need(std::size_t n, const std::string& what) const {
    if (remaining() < n) {
      throw CodecError(ErrorCode::kTruncatedStream, what + " truncated", pos_);
    }
  }

  // Length-prefixed section; truncation is reported at the section start.
  std::span<const std::uint8_t> section(const std::string& what) {
    const std::size_t start = pos_;
    need(4, what + " length");
    const std::uint32_t len = u32();
    if (remaining() < len) {
      throw CodecError(ErrorCode::kTruncatedStream,
                       what + " declares " + std::to_string(len) + " bytes, " +
                           std::to_string(remaining()) + " available",
                       start);
    }
    const auto out = in_.subspan(pos_, len);
    pos_ += len;
    return out;
  }

  void check_crc(std::size_t section_start, const std::string& what) {
    need(4, what + " checksum");
    const std::uint32_t expected = crc_of(in_.subspan(section_start, pos_ - section_start));
    if (u32() != expected) {
      throw CodecError(ErrorCode::kCorruptStream, what + " checksum mismatch", section_start);
    }
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void validate_header(const StreamHeader& h) {
  auto bad = [](const std::string& what) {
    throw CodecError(ErrorCode::kBadHeader, what, 0);
  };
  if (h.width <= 0 || h.width > 65535 || h.height <= 0 || h.height > 65535) bad("frame size");
  if (h.frames <= 0 || h.frames > 65535 || h.frames % 2 != 0) bad("frame count");
  if (h.bitdepth != kBitDepth) bad("bit depth");
  if (h.block_size <= 0 || h.block_size > 255) bad("block size");
  if (h.spatial_levels != spatial_levels_for(h.width, h.height)) bad("spatial level count");
  if (h.xi_max < 0 || h.xi_max > 65535) bad("xi_max");
  if (h.fixed_xi < 0 || h.fixed_xi > h.xi_max) bad("fixed xi");
  if (h.search_range < 0 || h.search_range > 127) bad("search range");
  if (h.lambda_index < -1 || h.lambda_index > 254) bad("lambda index");
  if (static_cast<int>(h.mode) > 3) bad("mode");
  if (static_cast<int>(h.filter.kind) > 1) bad("denoiser kind");
  if (!(h.filter.gaussian_scale > 0.0)) bad("Gaussian scale");
}

}  // namespace

const char* encode_mode_name(EncodeMode mode) noexcept {
  switch (mode) {
    case EncodeMode::kMctf: return "mctf";
    case EncodeMode::kFixedXi: return "fixed-xi";
    case EncodeMode::kRdoSchedule: return "rdo";
    case EncodeMode::kRdoLambda: return "rdo-lambda";
  }
  return "unknown";
}

std::vector<std::uint8_t> write_header(const StreamHeader& h) {
  validate_header(h);
  Writer w;
  w.bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>("WLDP"), 4));
  w.u8(kStreamVersion);
  w.u8(static_cast<std::uint32_t>(h.bitdepth));
  w.u8(static_cast<std::uint32_t>(h.filter.kind));
  w.u8(static_cast<std::uint32_t>(h.mode));
  w.u16(static_cast<std::uint32_t>(h.width));
  w.u16(static_cast<std::uint32_t>(h.height));
  w.u16(static_cast<std::uint32_t>(h.frames));
  w.u8(static_cast<std::uint32_t>(h.block_size));
  w.u8(static_cast<std::uint32_t>(h.spatial_levels));
  w.u8(h.lambda_index < 0 ? kNoLambdaIndex : static_cast<std::uint32_t>(h.lambda_index));
  w.u8(static_cast<std::uint32_t>(h.search_range));
  w.u16(static_cast<std::uint32_t>(h.fixed_xi));
  w.u16(static_cast<std::uint32_t>(h.xi_max));
  w.u16(0);
  w.f64(h.lambda);
  w.f64(h.filter.gaussian_scale);
  w.u32(crc_of(std::span<const std::uint8_t>(w.buffer()).first(kHeaderFieldBytes)));
  return std::move(w.buffer());
}

StreamHeader read_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "WLDP", 4) != 0) {
    throw CodecError(ErrorCode::kBadHeader, "missing WLDP magic", 0);
  }
  if (bytes.size() < 5) throw CodecError(ErrorCode::kTruncatedStream, "header truncated", 4);
  if (bytes[4] != kStreamVersion) {
    throw CodecError(ErrorCode::kVersionMismatch,
                     "stream version " + std::to_string(bytes[4]) + ", expected " +
                         std::to_string(kStreamVersion),
                     4);
  }
  if (bytes.size() < kStreamHeaderSize) {
    throw CodecError(ErrorCode::kTruncatedStream, "header truncated", bytes.size());
  }
  Reader r(bytes.first(kStreamHeaderSize));
  r.u32();
  r.u8();
  StreamHeader h;
  h.bitdepth = static_cast<int>(r.u8());
  h.filter.kind = static_cast<DenoiserKind>(r.u8());
  h.mode = static_cast<EncodeMode>(r.u8());
  h.width = static_cast<int>(r.u16());
  h.height = static_cast<int>(r.u16());
  h.frames = static_cast<int>(r.u16());
  h.block_size = static_cast<int>(r.u8());
  h.spatial_levels = static_cast<int>(r.u8());
  const std::uint32_t li = r.u8();
  h.lambda_index = li == kNoLambdaIndex ? -1 : static_cast<int>(li);
  h.search_range = static_cast<int>(r.u8());
  h.fixed_xi = static_cast<int>(r.u16());
  h.xi_max = static_cast<int>(r.u16());
  r.u16();
  h.lambda = r.f64();
  h.filter.gaussian_scale = r.f64();
  if (r.u32() != crc_of(bytes.first(kHeaderFieldBytes))) {
    throw CodecError(ErrorCode::kCorruptStream, "header checksum mismatch", kHeaderFieldBytes);
  }
  validate_header(h);
  return h;
}

PairPayload encode_pair_payload(const LiftingPair& pair, int spatial_levels) {
  PairPayload p;
  p.xi_p = pair.xi_p;
  p.xi_u = pair.xi_u;
  p.mv = encode_mv(pair.mv);
  p.lp = encode_frame(pair.lp, spatial_levels);
  p.hp = encode_frame(pair.hp, spatial_levels);
  return p;
}

std::vector<std::uint8_t> mux(std::span<const LiftingPair> pairs, const StreamHeader& header,
                              StreamSizes* sizes) {
  if (pairs.size() * 2 != static_cast<std::size_t>(header.frames)) {
    throw CodecError(ErrorCode::kInvalidArgument, "pair count does not match header");
  }
  for (const LiftingPair& p : pairs) {
    if (p.lp.width() != header.width || p.lp.height() != header.height ||
        p.mv.block_size() != header.block_size) {
      throw CodecError(ErrorCode::kDimensionMismatch, "pair does not match header geometry");
    }
  }

  StreamSizes local;
  StreamSizes& sz = sizes ? *sizes : local;
  sz = StreamSizes{};

  Writer w;
  w.bytes(write_header(header));
  sz.header = w.size();

  // Side information is coded in pair order through one context chain.
  XiEncoder xi(header.xi_max);
  for (const LiftingPair& p : pairs) xi.encode(p.xi_p, p.xi_u);
  const std::vector<std::uint8_t> side = xi.finish();
  std::size_t start = w.size();
  w.section(side);
  w.u32(crc_of(std::span<const std::uint8_t>(w.buffer()).subspan(start)));
  sz.side_info = side.size();

  for (const LiftingPair& p : pairs) {
    const PairPayload payload = encode_pair_payload(p, header.spatial_levels);
    start = w.size();
    w.section(payload.mv);
    w.section(payload.lp);
    w.section(payload.hp);
    w.u32(crc_of(std::span<const std::uint8_t>(w.buffer()).subspan(start)));
    sz.mv += payload.mv.size();
    sz.lp += payload.lp.size();
    sz.hp += payload.hp.size();
    sz.pair_rates.push_back(payload.rate());
  }
  sz.total = w.size();
  sz.framing = sz.total - sz.header - sz.side_info - sz.mv - sz.lp - sz.hp;
  return std::move(w.buffer());
}

ParsedStream parse_stream(std::span<const std::uint8_t> bytes) {
  ParsedStream out;
  out.header = read_header(bytes);
  const StreamHeader& h = out.header;
  Reader r(bytes);
  r.need(kStreamHeaderSize, "header");
  for (std::size_t i = 0; i < kStreamHeaderSize; ++i) r.u8();
  out.sizes.header = kStreamHeaderSize;

  std::size_t start = r.pos();
  const auto side = r.section("side information");
  r.check_crc(start, "side information");
  out.sizes.side_info = side.size();

  const std::size_t pair_count = static_cast<std::size_t>(h.frames) / 2;
  XiDecoder xi(side, h.xi_max);
  out.pairs.reserve(pair_count);
  for (std::size_t t = 0; t < pair_count; ++t) {
    const std::string label = "pair " + std::to_string(t);
    start = r.pos();
    const auto mv = r.section(label + " motion payload");
    const auto lp = r.section(label + " lowpass payload");
    const auto hp = r.section(label + " highpass payload");
    r.check_crc(start, label);

    LiftingPair pair;
    const auto [xi_p, xi_u] = xi.decode();
    pair.xi_p = xi_p;
    pair.xi_u = xi_u;
    try {
      pair.mv = decode_mv(mv, h.width, h.height);
      pair.lp = Frame(decode_frame(lp, h.width, h.height, h.spatial_levels), SequenceRole::kLowpass);
      pair.hp = Frame(decode_frame(hp, h.width, h.height, h.spatial_levels), SequenceRole::kHighpass);
    } catch (const CodecError& e) {
      throw CodecError(e.code(), label + ": " + e.what(), start);
    }
    if (pair.mv.block_size() != h.block_size) {
      throw CodecError(ErrorCode::kCorruptStream, label + " block size differs from header",
                       start);
    }
    out.sizes.mv += mv.size();
    out.sizes.lp += lp.size();
    out.sizes.hp += hp.size();
    out.sizes.pair_rates.push_back(mv.size() + lp.size() + hp.size());
    out.pairs.push_back(std::move(pair));
  }
  if (r.remaining() != 0) {
    throw CodecError(ErrorCode::kPayloadLengthMismatch,
                     std::to_string(r.remaining()) + " trailing bytes after last pair", r.pos());
  }
  out.sizes.total = bytes.size();
  out.sizes.framing = out.sizes.total - out.sizes.header - out.sizes.side_info - out.sizes.mv -
                      out.sizes.lp - out.sizes.hp;
  return out;
}

Sequence demux(std::span<const std::uint8_t> bytes) {
  const ParsedStream parsed = parse_stream(bytes);
  return synthesize_sequence(parsed.pairs, parsed.header.filter);
}

}  // namespace liftcodec
