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

#include "liftcodec/coding/side_info.hpp"

#include <algorithm>
#include <cstdlib>

#include "liftcodec/error.hpp"

namespace liftcodec {
namespace {

constexpr int kMvUnaryContexts = 8;
constexpr int kMaxResidual = 255;

struct MvContexts {
  std::array<BinContext, 2> zero{};
  std::array<BinContext, 2> sign{};
  std::array<std::array<BinContext, kMvUnaryContexts>, 2> magnitude{};
};

void encode_component(ArithEncoder& enc, MvContexts& ctx, int comp, int r) {
  if (r == 0) {
    enc.encode(0, ctx.zero[comp]);
    return;
  }
  enc.encode(1, ctx.zero[comp]);
  enc.encode(r < 0 ? 1 : 0, ctx.sign[comp]);
  const int a = std::abs(r) - 1;
  const int cap = kMaxResidual - 1;
  for (int i = 0; i < a; ++i) enc.encode(1, ctx.magnitude[comp][std::min(i, kMvUnaryContexts - 1)]);
  if (a < cap) enc.encode(0, ctx.magnitude[comp][std::min(a, kMvUnaryContexts - 1)]);
}

int decode_component(ArithDecoder& dec, MvContexts& ctx, int comp) {
  if (dec.decode(ctx.zero[comp]) == 0) return 0;
  const bool negative = dec.decode(ctx.sign[comp]) != 0;
  const int cap = kMaxResidual - 1;
  int a = 0;
  while (a < cap && dec.decode(ctx.magnitude[comp][std::min(a, kMvUnaryContexts - 1)]) == 1) ++a;
  return negative ? -(a + 1) : a + 1;
}

MotionVector predictor(const MotionField& field, int bx, int by) {
  if (bx > 0) return field.at(bx - 1, by);
  if (by > 0) return field.at(bx, by - 1);
  return {};
}

void encode_unary(ArithEncoder& enc, std::array<BinContext, XiContexts::kBins>& ctx, int v,
                  int cap) {
  if (v < 0 || v > cap) {
    throw CodecError(ErrorCode::kValueOverCap,
                     "noise parameter " + std::to_string(v) + " exceeds cap " + std::to_string(cap));
  }
  for (int i = 0; i < v; ++i) enc.encode(1, ctx[std::min(i, XiContexts::kBins - 1)]);
  if (v < cap) enc.encode(0, ctx[std::min(v, XiContexts::kBins - 1)]);
}

int decode_unary(ArithDecoder& dec, std::array<BinContext, XiContexts::kBins>& ctx, int cap) {
  int v = 0;
  while (v < cap && dec.decode(ctx[std::min(v, XiContexts::kBins - 1)]) == 1) ++v;
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode_mv(const MotionField& field) {
  std::vector<std::uint8_t> out = serialize_motion_field(field);
  out.resize(5);
  ArithEncoder enc;
  MvContexts ctx;
  for (int by = 0; by < field.blocks_y(); ++by) {
    for (int bx = 0; bx < field.blocks_x(); ++bx) {
      const MotionVector p = predictor(field, bx, by);
      const MotionVector v = field.at(bx, by);
      encode_component(enc, ctx, 0, v.dx - p.dx);
      encode_component(enc, ctx, 1, v.dy - p.dy);
    }
  }
  const std::vector<std::uint8_t> body = enc.finish();
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

MotionField decode_mv(std::span<const std::uint8_t> bytes, int frame_width, int frame_height) {
  if (bytes.size() < 5) {
    throw CodecError(ErrorCode::kTruncatedStream, "motion payload header truncated", bytes.size());
  }
  if (bytes[0] == 0) throw CodecError(ErrorCode::kCorruptStream, "zero block size", 0);
  MotionField field(frame_width, frame_height, bytes[0]);
  const int bx_count = bytes[1] | (bytes[2] << 8);
  const int by_count = bytes[3] | (bytes[4] << 8);
  if (bx_count != field.blocks_x() || by_count != field.blocks_y()) {
    throw CodecError(ErrorCode::kCorruptStream, "block counts do not match frame size", 1);
  }
  ArithDecoder dec(bytes.subspan(5));
  MvContexts ctx;
  for (int by = 0; by < field.blocks_y(); ++by) {
    for (int bx = 0; bx < field.blocks_x(); ++bx) {
      const MotionVector p = predictor(field, bx, by);
      const int dx = p.dx + decode_component(dec, ctx, 0);
      const int dy = p.dy + decode_component(dec, ctx, 1);
      if (dx < -128 || dx > 127 || dy < -128 || dy > 127) {
        throw CodecError(ErrorCode::kCorruptStream, "decoded motion vector out of range");
      }
      field.at(bx, by) = {dx, dy};
    }
  }
  return field;
}

void encode_xi(ArithEncoder& enc, XiContexts& ctx, int xi_p, int xi_u, int xi_max) {
  encode_unary(enc, ctx.predict, xi_p, xi_max);
  encode_unary(enc, ctx.update, xi_u, xi_max);
}

std::pair<int, int> decode_xi(ArithDecoder& dec, XiContexts& ctx, int xi_max) {
  const int p = decode_unary(dec, ctx.predict, xi_max);
  const int u = decode_unary(dec, ctx.update, xi_max);
  return {p, u};
}

XiEncoder::XiEncoder(int xi_max) : xi_max_(xi_max) {
  if (xi_max < 0) throw CodecError(ErrorCode::kInvalidArgument, "xi_max must be >= 0");
}

XiDecoder::XiDecoder(std::span<const std::uint8_t> bytes, int xi_max)
    : xi_max_(xi_max), dec_(bytes) {
  if (xi_max < 0) throw CodecError(ErrorCode::kInvalidArgument, "xi_max must be >= 0");
}

}  // namespace liftcodec
