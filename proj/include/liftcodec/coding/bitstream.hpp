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

#ifndef LIFTCODEC_CODING_BITSTREAM_HPP_
#define LIFTCODEC_CODING_BITSTREAM_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "liftcodec/core.hpp"
#include "liftcodec/denoise.hpp"
#include "liftcodec/lifting.hpp"

namespace liftcodec {

inline constexpr std::uint8_t kStreamVersion = 1;
inline constexpr std::size_t kStreamHeaderSize = 44;
inline constexpr std::uint8_t kNoLambdaIndex = 0xFF;

enum class EncodeMode : std::uint8_t {
  kMctf = 0,         // xi_p = xi_u = 0 everywhere
  kFixedXi = 1,      // xi_p = xi_u = fixed_xi everywhere
  kRdoSchedule = 2,  // rate-distortion search with lambda_schedule(lambda_index)
  kRdoLambda = 3,    // rate-distortion search with an explicit lambda
};

const char* encode_mode_name(EncodeMode mode) noexcept;

struct StreamHeader {
  int width = 0;
  int height = 0;
  int frames = 0;
  int bitdepth = kBitDepth;
  DenoiserSettings filter;
  EncodeMode mode = EncodeMode::kMctf;
  int block_size = 8;
  int spatial_levels = 0;
  int lambda_index = -1;
  int search_range = 8;
  int fixed_xi = 0;
  int xi_max = 100;
  double lambda = 0.0;

  bool operator==(const StreamHeader&) const = default;
};

std::vector<std::uint8_t> write_header(const StreamHeader& header);
StreamHeader read_header(std::span<const std::uint8_t> bytes);

// Entropy-coded payloads of one lifting pair. rate() is the quantity the
// rate-distortion search minimizes.
struct PairPayload {
  int xi_p = 0;
  int xi_u = 0;
  std::vector<std::uint8_t> mv;
  std::vector<std::uint8_t> lp;
  std::vector<std::uint8_t> hp;

  std::size_t rate() const noexcept { return mv.size() + lp.size() + hp.size(); }
};

PairPayload encode_pair_payload(const LiftingPair& pair, int spatial_levels);

struct StreamSizes {
  std::size_t header = 0;
  std::size_t side_info = 0;  // xi section payload
  std::size_t mv = 0;
  std::size_t lp = 0;
  std::size_t hp = 0;
  std::size_t framing = 0;  // length prefixes and checksums
  std::size_t total = 0;
  std::vector<std::size_t> pair_rates;
};

// Stream layout (all integers little endian):
//   header (44 bytes, CRC-32 of the first 40 in the last 4)
//   side info:  u32 len, xi payload, u32 crc
//   per pair:   u32 len, MV payload, u32 len, LP payload, u32 len, HP payload,
//               u32 crc over the pair section
std::vector<std::uint8_t> mux(std::span<const LiftingPair> pairs, const StreamHeader& header,
                              StreamSizes* sizes = nullptr);

struct ParsedStream {
  StreamHeader header;
  std::vector<LiftingPair> pairs;
  StreamSizes sizes;
};

// Validates framing and checksums and entropy-decodes every pair.
ParsedStream parse_stream(std::span<const std::uint8_t> bytes);

// Full decode: parse_stream followed by lifting synthesis with the decoded
// noise parameters.
Sequence demux(std::span<const std::uint8_t> bytes);

}  // namespace liftcodec

#endif  // LIFTCODEC_CODING_BITSTREAM_HPP_
