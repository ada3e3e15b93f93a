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

#ifndef LIFTCODEC_LIFTING_HPP_
#define LIFTCODEC_LIFTING_HPP_

#include <span>
#include <utility>
#include <vector>

#include "liftcodec/core.hpp"
#include "liftcodec/denoise.hpp"
#include "liftcodec/motion.hpp"

namespace liftcodec {

// Denoisers placed after motion compensation in the predict and update
// steps. xi == 0 switches the corresponding filter off.
struct DenoiseHooks {
  DenoiserSettings filter;
  int xi_p = 0;
  int xi_u = 0;
};

struct LiftingPair {
  Frame lp;
  Frame hp;
  MotionField mv;
  int xi_p = 0;
  int xi_u = 0;
};

// Filter strength h = xi * sigma_n^2 for one denoiser call, with the noise
// variance estimated on that call's own input. Zero when xi == 0 or the
// input is smaller than 3x3.
double step_strength(const Frame& input, int xi);

// floor(DN_P(prediction)) with prediction = warp(odd, mv).
Frame prediction_term(const Frame& prediction, const DenoiserSettings& filter, double h);

// floor(0.5 * DN_U(update_input)) with update_input = warp(HP, invert(mv)).
Frame update_term(const Frame& update_input, const DenoiserSettings& filter, double h);

// HP = even - floor(DN_P(W(odd)))
// LP = odd + floor(0.5 * DN_U(W^-1(HP)))
LiftingPair analyze(const Frame& odd, const Frame& even, const MotionField& mv,
                    const DenoiseHooks& hooks);

struct FramePair {
  Frame odd;
  Frame even;
};

// Exact inverse of analyze, given the same denoiser settings: odd is
// recovered first from LP and HP, then even from HP and the recovered odd.
FramePair synthesize(const LiftingPair& pair, const DenoiserSettings& filter);

std::vector<LiftingPair> analyze_sequence(const Sequence& seq,
                                          std::span<const MotionField> fields,
                                          std::span<const DenoiseHooks> hooks);
Sequence synthesize_sequence(std::span<const LiftingPair> pairs, const DenoiserSettings& filter);

}  // namespace liftcodec

#endif  // LIFTCODEC_LIFTING_HPP_
