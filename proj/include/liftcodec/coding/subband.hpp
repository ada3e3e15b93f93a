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

#ifndef LIFTCODEC_CODING_SUBBAND_HPP_
#define LIFTCODEC_CODING_SUBBAND_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "liftcodec/coding/arith.hpp"
#include "liftcodec/coding/spatial.hpp"

namespace liftcodec {

// Coefficient binarization, per coefficient v in raster order of a subband
// (LL coefficients are first replaced by their residual from the LOCO-I
// median predictor over left/up/up-left):
//
//   m     = |left| + |up| + (|up-left| + |up-right|) / 2   (causal, coded values)
//   class = min(8, bit_width(m))
//   zero flag            ctx zero[class]
//   sign                 ctx sign[sign of left neighbour]
//   a = |v| - 1, k = bit_length(m / 6)
//   q = a >> k in unary  ctx magnitude[class][min(i, 5)], at most 16 ones
//   if q >= 16           exp-Golomb(0) of q - 16, bypass bits
//   a & (2^k - 1)        k bypass bits
// Largest codable coefficient (or LL residual) magnitude.
inline constexpr std::int32_t kMaxCoefficientMagnitude = (1 << 26) - 1;

struct SubbandContextSet {
  static constexpr int kClasses = 9;
  static constexpr int kUnaryContexts = 6;

  std::array<BinContext, kClasses> zero{};
  std::array<BinContext, 3> sign{};
  std::array<std::array<BinContext, kUnaryContexts>, kClasses> magnitude{};
};

// One context set per subband orientation; levels share.
struct FrameContexts {
  std::array<SubbandContextSet, 4> sets{};

  SubbandContextSet& for_kind(SubbandKind kind) { return sets[static_cast<int>(kind)]; }
};

void encode_subband_into(ArithEncoder& enc, SubbandContextSet& ctx,
                         std::span<const std::int32_t> coeffs, int width, int height,
                         SubbandKind kind);
std::vector<std::int32_t> decode_subband_from(ArithDecoder& dec, SubbandContextSet& ctx,
                                              int width, int height, SubbandKind kind);

// Standalone subband payload: u32 little-endian length, then the arithmetic
// coded bytes (empty for an empty subband).
std::vector<std::uint8_t> encode_subband(std::span<const std::int32_t> coeffs, int width,
                                         int height, SubbandKind kind);
std::vector<std::int32_t> decode_subband(std::span<const std::uint8_t> bytes, int width,
                                         int height, SubbandKind kind);

// Frame payload: spatial 5/3 transform, then every subband in layout order
// through one arithmetic coder with fresh contexts. No length prefix.
std::vector<std::uint8_t> encode_frame(const Plane<std::int32_t>& frame, int levels);
Plane<std::int32_t> decode_frame(std::span<const std::uint8_t> bytes, int width, int height,
                                 int levels);

}  // namespace liftcodec

#endif  // LIFTCODEC_CODING_SUBBAND_HPP_
