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

#include "liftcodec/coding/codec.hpp"

#include "liftcodec/coding/spatial.hpp"
#include "liftcodec/parallel.hpp"

namespace liftcodec {

double EncoderConfig::effective_lambda() const {
  switch (mode) {
    case EncodeMode::kRdoSchedule: return lambda_schedule(lambda_index);
    case EncodeMode::kRdoLambda: return lambda;
    default: return 0.0;
  }
}

StreamHeader make_header(const Sequence& seq, const EncoderConfig& cfg) {
  if (seq.size() == 0) throw CodecError(ErrorCode::kInvalidArgument, "empty sequence");
  if (seq.size() % 2 != 0) {
    throw CodecError(ErrorCode::kOddLengthSequence, "sequence has an odd frame count");
  }
  if (cfg.mode == EncodeMode::kRdoLambda && !(cfg.lambda >= 0.0)) {
    throw CodecError(ErrorCode::kInvalidArgument, "lambda must be non-negative");
  }
  StreamHeader h;
  h.width = seq[0].width();
  h.height = seq[0].height();
  h.frames = static_cast<int>(seq.size());
  h.bitdepth = kBitDepth;
  h.filter = cfg.filter;
  h.mode = cfg.mode;
  h.block_size = cfg.search.block_size;
  h.spatial_levels = spatial_levels_for(h.width, h.height);
  h.lambda_index = cfg.mode == EncodeMode::kRdoSchedule ? cfg.lambda_index : -1;
  h.search_range = cfg.search.range;
  h.fixed_xi = cfg.mode == EncodeMode::kFixedXi ? cfg.fixed_xi : 0;
  h.xi_max = cfg.xi_max;
  h.lambda = cfg.effective_lambda();
  return h;
}

EncodeResult encode_sequence(const Sequence& seq, const EncoderConfig& cfg) {
  EncodeResult out;
  out.header = make_header(seq, cfg);
  if (cfg.mode == EncodeMode::kFixedXi && (cfg.fixed_xi < 0 || cfg.fixed_xi > cfg.xi_max)) {
    throw CodecError(ErrorCode::kValueOverCap, "fixed xi outside [0, xi_max]");
  }

  if (cfg.mode == EncodeMode::kRdoSchedule || cfg.mode == EncodeMode::kRdoLambda) {
    RdoParams params;
    params.lambda = out.header.lambda;
    params.filter = cfg.filter;
    params.xi_max = cfg.xi_max;
    params.search = cfg.search;
    for (RdoPairResult& r : encode_sequence_rdo(seq, params)) {
      out.pairs.push_back(std::move(r.pair));
      out.searches.push_back(std::move(r.search));
    }
  } else {
    const int xi = cfg.mode == EncodeMode::kFixedXi ? cfg.fixed_xi : 0;
    const SplitSequence parts = split(seq);
    std::vector<MotionField> fields(parts.odd.size());
    parallel_for(fields.size(), [&](std::size_t t) {
      fields[t] = estimate_motion(parts.odd[t], parts.even[t], cfg.search);
    });
    const std::vector<DenoiseHooks> hooks(fields.size(), DenoiseHooks{cfg.filter, xi, xi});
    out.pairs = analyze_sequence(seq, fields, hooks);
  }
  out.stream = mux(out.pairs, out.header, &out.sizes);
  return out;
}

Sequence decode_sequence(std::span<const std::uint8_t> stream) { return demux(stream); }

}  // namespace liftcodec
