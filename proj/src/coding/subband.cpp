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

#include "liftcodec/coding/subband.hpp"

#include <bit>
#include <cstdlib>

#include "liftcodec/error.hpp"

namespace liftcodec {
namespace {

constexpr int kUnaryCap = 16;
// Escape values reach q = 2^26 + 15 when k = 0, which needs a 27-bit code.
constexpr int kMaxEscapePrefix = 27;
constexpr std::int64_t kMaxMagnitude = std::int64_t{kMaxCoefficientMagnitude} + 1;

int magnitude_class(std::uint32_t m) {
  if (m == 0) return 0;
  const int c = std::bit_width(m);  // 1 for m=1, 2 for 2..3, ...
  return c >= SubbandContextSet::kClasses - 1 ? SubbandContextSet::kClasses - 1 : c;
}

int rice_parameter(std::uint32_t m) { return std::bit_width(m / 6); }

std::int32_t med_predict(std::int32_t left, std::int32_t up, std::int32_t up_left) {
  const std::int32_t hi = left > up ? left : up;
  const std::int32_t lo = left > up ? up : left;
  if (up_left >= hi) return lo;
  if (up_left <= lo) return hi;
  return left + up - up_left;
}

// Causal neighbourhood over already-coded values of the subband.
struct Neighborhood {
  std::uint32_t activity;
  int left_sign;
};

Neighborhood neighborhood(const std::vector<std::int32_t>& coded, int width, int x, int y) {
  auto mag = [&](int xx, int yy) -> std::uint32_t {
    if (xx < 0 || yy < 0 || xx >= width) return 0;
    return static_cast<std::uint32_t>(std::abs(coded[static_cast<std::size_t>(yy) * width + xx]));
  };
  const std::uint32_t m = mag(x - 1, y) + mag(x, y - 1) + (mag(x - 1, y - 1) + mag(x + 1, y - 1)) / 2;
  int s = 0;
  if (x > 0) {
    const std::int32_t l = coded[static_cast<std::size_t>(y) * width + x - 1];
    s = l > 0 ? 1 : (l < 0 ? 2 : 0);
  }
  return {m, s};
}

std::int32_t ll_prediction(const std::vector<std::int32_t>& values, int width, int x, int y) {
  auto v = [&](int xx, int yy) { return values[static_cast<std::size_t>(yy) * width + xx]; };
  if (x > 0 && y > 0) return med_predict(v(x - 1, y), v(x, y - 1), v(x - 1, y - 1));
  if (x > 0) return v(x - 1, y);
  if (y > 0) return v(x, y - 1);
  return 0;
}

void encode_value(ArithEncoder& enc, SubbandContextSet& ctx, std::int32_t v,
                  const Neighborhood& nb) {
  const int cls = magnitude_class(nb.activity);
  if (v == 0) {
    enc.encode(0, ctx.zero[cls]);
    return;
  }
  if (v <= -kMaxMagnitude || v >= kMaxMagnitude) {
    throw CodecError(ErrorCode::kInvalidArgument, "coefficient magnitude out of range");
  }
  enc.encode(1, ctx.zero[cls]);
  enc.encode(v < 0 ? 1 : 0, ctx.sign[nb.left_sign]);
  const std::uint32_t a = static_cast<std::uint32_t>(std::abs(static_cast<std::int64_t>(v)) - 1);
  const int k = rice_parameter(nb.activity);
  const std::uint32_t q = a >> k;
  const std::uint32_t unary = q < kUnaryCap ? q : kUnaryCap;
  for (std::uint32_t i = 0; i < unary; ++i) {
    enc.encode(1, ctx.magnitude[cls][i < 5 ? i : 5]);
  }
  if (q < kUnaryCap) {
    enc.encode(0, ctx.magnitude[cls][unary < 5 ? unary : 5]);
  } else {
    const std::uint32_t e = q - kUnaryCap + 1;
    const int len = std::bit_width(e);
    for (int i = 1; i < len; ++i) enc.encode_bypass(1);
    enc.encode_bypass(0);
    enc.encode_bits(e, len - 1);
  }
  if (k > 0) enc.encode_bits(a & ((1u << k) - 1), k);
}

std::int32_t decode_value(ArithDecoder& dec, SubbandContextSet& ctx, const Neighborhood& nb) {
  const int cls = magnitude_class(nb.activity);
  if (dec.decode(ctx.zero[cls]) == 0) return 0;
  const bool negative = dec.decode(ctx.sign[nb.left_sign]) != 0;
  const int k = rice_parameter(nb.activity);
  std::uint32_t q = 0;
  while (q < kUnaryCap && dec.decode(ctx.magnitude[cls][q < 5 ? q : 5]) == 1) ++q;
  if (q == kUnaryCap) {
    int len = 1;
    while (dec.decode_bypass() == 1) {
      if (++len > kMaxEscapePrefix) {
        throw CodecError(ErrorCode::kCorruptStream, "escape code too long in subband payload");
      }
    }
    const std::uint32_t e = (1u << (len - 1)) | dec.decode_bits(len - 1);
    q = kUnaryCap + e - 1;
  }
  const std::int64_t a = (static_cast<std::int64_t>(q) << k) |
                         (k > 0 ? dec.decode_bits(k) : 0u);
  if (a + 1 >= kMaxMagnitude) {
    throw CodecError(ErrorCode::kCorruptStream, "coefficient magnitude out of range");
  }
  const std::int32_t mag = static_cast<std::int32_t>(a + 1);
  return negative ? -mag : mag;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

void encode_subband_into(ArithEncoder& enc, SubbandContextSet& ctx,
                         std::span<const std::int32_t> coeffs, int width, int height,
                         SubbandKind kind) {
  if (coeffs.size() != static_cast<std::size_t>(width) * height) {
    throw CodecError(ErrorCode::kDimensionMismatch, "subband size mismatch");
  }
  std::vector<std::int32_t> coded(coeffs.begin(), coeffs.end());
  const std::vector<std::int32_t> values(coeffs.begin(), coeffs.end());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      if (kind == SubbandKind::kLowLow) coded[i] = values[i] - ll_prediction(values, width, x, y);
      encode_value(enc, ctx, coded[i], neighborhood(coded, width, x, y));
    }
  }
}

std::vector<std::int32_t> decode_subband_from(ArithDecoder& dec, SubbandContextSet& ctx,
                                              int width, int height, SubbandKind kind) {
  const std::size_t n = static_cast<std::size_t>(width) * height;
  std::vector<std::int32_t> coded(n, 0), values(n, 0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      coded[i] = decode_value(dec, ctx, neighborhood(coded, width, x, y));
      values[i] = coded[i];
      if (kind == SubbandKind::kLowLow) {
        const std::int64_t v = static_cast<std::int64_t>(coded[i]) + ll_prediction(values, width, x, y);
        if (v <= -kMaxMagnitude || v >= kMaxMagnitude) {
          throw CodecError(ErrorCode::kCorruptStream, "coefficient out of range");
        }
        values[i] = static_cast<std::int32_t>(v);
      }
    }
  }
  return values;
}

std::vector<std::uint8_t> encode_subband(std::span<const std::int32_t> coeffs, int width,
                                         int height, SubbandKind kind) {
  ArithEncoder enc;
  SubbandContextSet ctx;
  encode_subband_into(enc, ctx, coeffs, width, height, kind);
  const std::vector<std::uint8_t> body = enc.finish();
  std::vector<std::uint8_t> out;
  out.reserve(4 + body.size());
  put_u32(out, static_cast<std::uint32_t>(body.size()));
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::vector<std::int32_t> decode_subband(std::span<const std::uint8_t> bytes, int width,
                                         int height, SubbandKind kind) {
  if (width < 0 || height < 0) {
    throw CodecError(ErrorCode::kInvalidArgument, "negative subband size");
  }
  if (bytes.size() < 4) {
    throw CodecError(ErrorCode::kTruncatedStream, "subband length prefix truncated", 0);
  }
  const std::uint32_t len = bytes[0] | (bytes[1] << 8) | (bytes[2] << 16) |
                            (static_cast<std::uint32_t>(bytes[3]) << 24);
  if (len > bytes.size() - 4) {
    throw CodecError(ErrorCode::kTruncatedStream, "subband payload truncated", 4);
  }
  if (len != bytes.size() - 4) {
    throw CodecError(ErrorCode::kPayloadLengthMismatch, "trailing bytes after subband payload",
                     4 + static_cast<std::size_t>(len));
  }
  if (width == 0 || height == 0) {
    if (len != 0) {
      throw CodecError(ErrorCode::kPayloadLengthMismatch, "non-empty payload for empty subband", 4);
    }
    return {};
  }
  ArithDecoder dec(bytes.subspan(4));
  SubbandContextSet ctx;
  return decode_subband_from(dec, ctx, width, height, kind);
}

std::vector<std::uint8_t> encode_frame(const Plane<std::int32_t>& frame, int levels) {
  const CoefficientPlane coeffs = spatial_forward(frame, levels);
  ArithEncoder enc;
  FrameContexts ctx;
  std::vector<std::int32_t> band;
  for (const SubbandRect& r : subband_layout(frame.width(), frame.height(), levels)) {
    band.clear();
    for (int y = r.y0; y < r.y0 + r.height; ++y) {
      for (int x = r.x0; x < r.x0 + r.width; ++x) band.push_back(coeffs(x, y));
    }
    encode_subband_into(enc, ctx.for_kind(r.kind), band, r.width, r.height, r.kind);
  }
  return enc.finish();
}

Plane<std::int32_t> decode_frame(std::span<const std::uint8_t> bytes, int width, int height,
                                 int levels) {
  CoefficientPlane coeffs(width, height);
  ArithDecoder dec(bytes);
  FrameContexts ctx;
  for (const SubbandRect& r : subband_layout(width, height, levels)) {
    const auto band = decode_subband_from(dec, ctx.for_kind(r.kind), r.width, r.height, r.kind);
    std::size_t i = 0;
    for (int y = r.y0; y < r.y0 + r.height; ++y) {
      for (int x = r.x0; x < r.x0 + r.width; ++x) coeffs(x, y) = band[i++];
    }
  }
  return spatial_inverse(coeffs, levels);
}

}  // namespace liftcodec
