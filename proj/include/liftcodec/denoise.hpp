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

#ifndef LIFTCODEC_DENOISE_HPP_
#define LIFTCODEC_DENOISE_HPP_

#include <cstdint>

#include "liftcodec/core.hpp"

namespace liftcodec {

// Estimated noise variance of an image, in squared sample units.
struct NoiseEstimate {
  double sigma_sq = 0.0;
};

enum class DenoiserKind : std::uint8_t {
  kGaussian = 0,
  kNonLocalMeans = 1,
};

const char* denoiser_name(DenoiserKind kind) noexcept;

// K_g: the Gaussian kernel deviation is sqrt(h) / K_g.
inline constexpr double kDefaultGaussianScale = 32.0;

inline constexpr int kNlmPatchRadius = 2;   // 5x5 patches
inline constexpr int kNlmSearchRadius = 5;  // 11x11 window

struct DenoiserSettings {
  DenoiserKind kind = DenoiserKind::kGaussian;
  double gaussian_scale = kDefaultGaussianScale;

  bool operator==(const DenoiserSettings&) const = default;
};

// Immerkaer's estimator. With N the 3x3 mask [1 -2 1; -2 4 -2; 1 -2 1]
// applied to the (W-2)x(H-2) interior,
//   sigma = sqrt(pi/2) / (6 (W-2) (H-2)) * sum |I * N|
// and the estimate is sigma^2. Requires W, H >= 3.
NoiseEstimate estimate_noise(const Frame& frame);

// h = xi * sigma_n^2.
double filter_strength(int xi, NoiseEstimate estimate);

// Deterministic denoising at strength h >= 0; h == 0 returns the input
// unchanged. Outputs are exact on constant images.
RealPlane denoise(const Frame& frame, const DenoiserSettings& settings, double h);

// Separable Gaussian, rows then columns, kernel truncated at 3 deviations,
// clamped borders.
RealPlane gaussian_denoise(const Frame& frame, double h,
                           double gaussian_scale = kDefaultGaussianScale);

// Non-local means with weights exp(-d^2 / h), d^2 the mean squared difference
// of 5x5 patches, over an 11x11 window. Weights are accumulated per pixel in
// raster order of the window offsets.
RealPlane nlm_denoise(const Frame& frame, double h);

}  // namespace liftcodec

#endif  // LIFTCODEC_DENOISE_HPP_
