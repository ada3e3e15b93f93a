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

#include "liftcodec/lifting.hpp"

#include <cmath>

namespace liftcodec {
namespace {

void require_same_dims(const Frame& a, const Frame& b, const char* what) {
  if (!a.same_dims(b)) throw CodecError(ErrorCode::kDimensionMismatch, what);
}

void require_field_matches(const Frame& f, const MotionField& mv) {
  if (f.width() != mv.frame_width() || f.height() != mv.frame_height()) {
    throw CodecError(ErrorCode::kDimensionMismatch, "motion field does not match frames");
  }
}

}  // namespace

double step_strength(const Frame& input, int xi) {
  if (xi == 0 || input.width() < 3 || input.height() < 3) return 0.0;
  return filter_strength(xi, estimate_noise(input));
}

Frame prediction_term(const Frame& prediction, const DenoiserSettings& filter, double h) {
  if (h == 0.0) return prediction;
  const RealPlane dn = denoise(prediction, filter, h);
  Frame out(prediction.width(), prediction.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.samples()[i] = static_cast<std::int32_t>(std::floor(dn.samples()[i]));
  }
  return out;
}

Frame update_term(const Frame& update_input, const DenoiserSettings& filter, double h) {
  Frame out(update_input.width(), update_input.height());
  if (h == 0.0) {
    // Arithmetic shift is floor division by two.
    for (std::size_t i = 0; i < out.size(); ++i) {
      out.samples()[i] = update_input.samples()[i] >> 1;
    }
    return out;
  }
  const RealPlane dn = denoise(update_input, filter, h);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.samples()[i] = static_cast<std::int32_t>(std::floor(0.5 * dn.samples()[i]));
  }
  return out;
}

LiftingPair analyze(const Frame& odd, const Frame& even, const MotionField& mv,
                    const DenoiseHooks& hooks) {
  require_same_dims(odd, even, "odd and even frames differ in size");
  require_field_matches(odd, mv);
  if (hooks.xi_p < 0 || hooks.xi_u < 0) {
    throw CodecError(ErrorCode::kInvalidArgument, "noise parameters must be >= 0");
  }

  LiftingPair pair;
  pair.mv = mv;
  pair.xi_p = hooks.xi_p;
  pair.xi_u = hooks.xi_u;

  const Frame prediction = warp(odd, mv);
  const Frame pred =
      prediction_term(prediction, hooks.filter, step_strength(prediction, hooks.xi_p));
  pair.hp = Frame(odd.width(), odd.height(), SequenceRole::kHighpass);
  for (std::size_t i = 0; i < odd.size(); ++i) {
    pair.hp.samples()[i] = even.samples()[i] - pred.samples()[i];
  }

  const Frame update_input = warp(pair.hp, invert(mv));
  const Frame upd =
      update_term(update_input, hooks.filter, step_strength(update_input, hooks.xi_u));
  pair.lp = Frame(odd.width(), odd.height(), SequenceRole::kLowpass);
  for (std::size_t i = 0; i < odd.size(); ++i) {
    pair.lp.samples()[i] = odd.samples()[i] + upd.samples()[i];
  }
  return pair;
}

FramePair synthesize(const LiftingPair& pair, const DenoiserSettings& filter) {
  require_same_dims(pair.lp, pair.hp, "lowpass and highpass frames differ in size");
  require_field_matches(pair.lp, pair.mv);

  FramePair out;
  const Frame update_input = warp(pair.hp, invert(pair.mv));
  const Frame upd = update_term(update_input, filter, step_strength(update_input, pair.xi_u));
  out.odd = Frame(pair.lp.width(), pair.lp.height());
  for (std::size_t i = 0; i < out.odd.size(); ++i) {
    out.odd.samples()[i] = pair.lp.samples()[i] - upd.samples()[i];
  }

  const Frame prediction = warp(out.odd, pair.mv);
  const Frame pred = prediction_term(prediction, filter, step_strength(prediction, pair.xi_p));
  out.even = Frame(pair.lp.width(), pair.lp.height());
  for (std::size_t i = 0; i < out.even.size(); ++i) {
    out.even.samples()[i] = pair.hp.samples()[i] + pred.samples()[i];
  }
  return out;
}

std::vector<LiftingPair> analyze_sequence(const Sequence& seq,
                                          std::span<const MotionField> fields,
                                          std::span<const DenoiseHooks> hooks) {
  const SplitSequence parts = split(seq);
  const std::size_t n = parts.odd.size();
  if (fields.size() != n || hooks.size() != n) {
    throw CodecError(ErrorCode::kInvalidArgument, "one motion field and hook set per pair");
  }
  std::vector<LiftingPair> pairs;
  pairs.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    pairs.push_back(analyze(parts.odd[t], parts.even[t], fields[t], hooks[t]));
  }
  return pairs;
}

Sequence synthesize_sequence(std::span<const LiftingPair> pairs, const DenoiserSettings& filter) {
  std::vector<Frame> frames;
  frames.reserve(2 * pairs.size());
  for (const LiftingPair& pair : pairs) {
    FramePair fp = synthesize(pair, filter);
    frames.push_back(std::move(fp.odd));
    frames.push_back(std::move(fp.even));
  }
  return Sequence(std::move(frames));
}

}  // namespace liftcodec
