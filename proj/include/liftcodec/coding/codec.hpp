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

#ifndef LIFTCODEC_CODING_CODEC_HPP_
#define LIFTCODEC_CODING_CODEC_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "liftcodec/coding/bitstream.hpp"
#include "liftcodec/core.hpp"
#include "liftcodec/rdo.hpp"

namespace liftcodec {

struct EncoderConfig {
  EncodeMode mode = EncodeMode::kMctf;
  int lambda_index = 0;  // kRdoSchedule
  double lambda = 0.0;   // kRdoLambda
  int fixed_xi = 0;      // kFixedXi
  DenoiserSettings filter;
  int xi_max = kDefaultXiMax;
  SearchParams search;

  // Lambda actually used by the search; zero outside the RDO modes.
  double effective_lambda() const;
};

struct EncodeResult {
  std::vector<std::uint8_t> stream;
  StreamHeader header;
  std::vector<LiftingPair> pairs;
  // Per-pair search traces; empty outside the RDO modes.
  std::vector<RingSearchResult> searches;
  StreamSizes sizes;
};

StreamHeader make_header(const Sequence& seq, const EncoderConfig& cfg);

EncodeResult encode_sequence(const Sequence& seq, const EncoderConfig& cfg);
Sequence decode_sequence(std::span<const std::uint8_t> stream);

}  // namespace liftcodec

#endif  // LIFTCODEC_CODING_CODEC_HPP_
