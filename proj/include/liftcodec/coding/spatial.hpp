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

#ifndef LIFTCODEC_CODING_SPATIAL_HPP_
#define LIFTCODEC_CODING_SPATIAL_HPP_

#include <cstdint>
#include <vector>

#include "liftcodec/core.hpp"

namespace liftcodec {

inline constexpr int kMaxSpatialLevels = 4;

using CoefficientPlane = Plane<std::int32_t>;

enum class SubbandKind : std::uint8_t { kLowLow = 0, kHighLow = 1, kLowHigh = 2, kHighHigh = 3 };

struct SubbandRect {
  SubbandKind kind;
  int level;  // 1 = finest
  int x0, y0, width, height;
};

// Largest level count <= max_levels such that every dimension still has at
// least one sample per 2^levels (a 16x16 frame gets 4 levels, 2x2 gets 1).
int spatial_levels_for(int width, int height, int max_levels = kMaxSpatialLevels);

// Subbands of a Mallat layout in coding order: the final LL band, then
// HL, LH, HH from the coarsest level to the finest.
std::vector<SubbandRect> subband_layout(int width, int height, int levels);

// Reversible integer 5/3 lifting (floor rounding, symmetric extension),
// applied to rows then columns of the shrinking LL region.
CoefficientPlane spatial_forward(const Plane<std::int32_t>& frame, int levels);
Plane<std::int32_t> spatial_inverse(const CoefficientPlane& coeffs, int levels);

}  // namespace liftcodec

#endif  // LIFTCODEC_CODING_SPATIAL_HPP_
