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

#ifndef LIFTCODEC_CODING_SIDE_INFO_HPP_
#define LIFTCODEC_CODING_SIDE_INFO_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "liftcodec/coding/arith.hpp"
#include "liftcodec/motion.hpp"

namespace liftcodec {

// Motion payload: the 5-byte raw field header (block size, blocks_x,
// blocks_y) followed by arithmetic-coded vector residuals. Each vector is
// predicted from its left neighbour (the block above in the first column);
// each residual component is a zero flag, a sign and a unary magnitude, with
// separate contexts for x and y.
std::vector<std::uint8_t> encode_mv(const MotionField& field);
MotionField decode_mv(std::span<const std::uint8_t> bytes, int frame_width, int frame_height);

// Noise-parameter side information. Each xi is a unary string terminated by
// a zero bin, except that the terminator is dropped at xi == xi_max. The P and
// U values have separate context sets; contexts live as long as the coder, so
// they adapt across all pairs of a stream.
struct XiContexts {
  static constexpr int kBins = 32;
  std::array<BinContext, kBins> predict{};
  std::array<BinContext, kBins> update{};
};

void encode_xi(ArithEncoder& enc, XiContexts& ctx, int xi_p, int xi_u, int xi_max);
std::pair<int, int> decode_xi(ArithDecoder& dec, XiContexts& ctx, int xi_max);

class XiEncoder {
 public:
  explicit XiEncoder(int xi_max);
  void encode(int xi_p, int xi_u) { encode_xi(enc_, ctx_, xi_p, xi_u, xi_max_); }
  std::vector<std::uint8_t> finish() { return enc_.finish(); }

 private:
  int xi_max_;
  ArithEncoder enc_;
  XiContexts ctx_;
};

class XiDecoder {
 public:
  XiDecoder(std::span<const std::uint8_t> bytes, int xi_max);
  std::pair<int, int> decode() { return decode_xi(dec_, ctx_, xi_max_); }

 private:
  int xi_max_;
  ArithDecoder dec_;
  XiContexts ctx_;
};

}  // namespace liftcodec

#endif  // LIFTCODEC_CODING_SIDE_INFO_HPP_
