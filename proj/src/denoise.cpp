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

#include "liftcodec/denoise.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

namespace liftcodec {
namespace {

RealPlane to_real(const Frame& frame) {
  RealPlane out(frame.width(), frame.height());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    out.samples()[i] = static_cast<double>(frame.samples()[i]);
  }
  return out;
}

void check_strength(double h) {
  if (!(h >= 0.0)) throw CodecError(ErrorCode::kInvalidArgument, "filter strength must be >= 0");
}

}  // namespace

const char* denoiser_name(DenoiserKind kind) noexcept {
  switch (kind) {
    case DenoiserKind::kGaussian: return "gaussian";
    case DenoiserKind::kNonLocalMeans: return "nlm";
  }
  return "unknown";
}

NoiseEstimate estimate_noise(const Frame& frame) {
  const int w = frame.width();
  const int h = frame.height();
  if (w < 3 || h < 3) {
    throw CodecError(ErrorCode::kFrameTooSmall, "noise estimation needs at least 3x3 pixels");
  }
  std::int64_t total = 0;
  for (int y = 1; y < h - 1; ++y) {
    const std::int32_t* up = frame.row(y - 1);
    const std::int32_t* mid = frame.row(y);
    const std::int32_t* dn = frame.row(y + 1);
    for (int x = 1; x < w - 1; ++x) {
      const std::int64_t r = (up[x - 1] - 2 * up[x] + up[x + 1]) -
                             2 * (mid[x - 1] - 2 * mid[x] + mid[x + 1]) +
                             (dn[x - 1] - 2 * dn[x] + dn[x + 1]);
      total += r < 0 ? -r : r;
    }
  }
  const double interior = static_cast<double>(w - 2) * static_cast<double>(h - 2);
  const double sigma =
      std::sqrt(std::numbers::pi / 2.0) * static_cast<double>(total) / (6.0 * interior);
  return {sigma * sigma};
}

double filter_strength(int xi, NoiseEstimate estimate) {
  if (xi < 0) throw CodecError(ErrorCode::kInvalidArgument, "noise parameter must be >= 0");
  return static_cast<double>(xi) * estimate.sigma_sq;
}

RealPlane denoise(const Frame& frame, const DenoiserSettings& settings, double h) {
  switch (settings.kind) {
    case DenoiserKind::kGaussian: return gaussian_denoise(frame, h, settings.gaussian_scale);
    case DenoiserKind::kNonLocalMeans: return nlm_denoise(frame, h);
  }
  throw CodecError(ErrorCode::kInvalidArgument, "unknown denoiser kind");
}

RealPlane gaussian_denoise(const Frame& frame, double h, double gaussian_scale) {
  check_strength(h);
  if (!(gaussian_scale > 0.0)) {
    throw CodecError(ErrorCode::kInvalidArgument, "Gaussian scale must be positive");
  }
  if (h == 0.0) return to_real(frame);
  const double sd = std::sqrt(h) / gaussian_scale;
  const int radius = static_cast<int>(std::ceil(3.0 * sd));
  if (radius == 0) return to_real(frame);

  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-static_cast<double>(i * i) / (2.0 * sd * sd));
    sum += kernel[i + radius];
  }
  for (double& k : kernel) k /= sum;

  const int w = frame.width();
  const int ht = frame.height();
  // Each output is center + sum k_i (neighbor_i - center), which keeps
  // constant regions exact.
  RealPlane rows(w, ht);
  for (int y = 0; y < ht; ++y) {
    const std::int32_t* src = frame.row(y);
    for (int x = 0; x < w; ++x) {
      const double c = src[x];
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int xx = x + i < 0 ? 0 : (x + i >= w ? w - 1 : x + i);
        acc += kernel[i + radius] * (src[xx] - c);
      }
      rows(x, y) = c + acc;
    }
  }
  RealPlane out(w, ht);
  for (int y = 0; y < ht; ++y) {
    for (int x = 0; x < w; ++x) {
      const double c = rows(x, y);
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int yy = y + i < 0 ? 0 : (y + i >= ht ? ht - 1 : y + i);
        acc += kernel[i + radius] * (rows(x, yy) - c);
      }
      out(x, y) = c + acc;
    }
  }
  return out;
}

RealPlane nlm_denoise(const Frame& frame, double h) {
  check_strength(h);
  if (h == 0.0 || frame.empty()) return to_real(frame);

  const int w = frame.width();
  const int ht = frame.height();
  constexpr int P = kNlmPatchRadius;
  constexpr int S = kNlmSearchRadius;
  constexpr double patch_area = (2 * P + 1) * (2 * P + 1);
  const int ew = w + 2 * P;
  const int eh = ht + 2 * P;

  RealPlane num(w, ht, 0.0);
  RealPlane den(w, ht, 0.0);
  std::vector<std::int64_t> diff(static_cast<std::size_t>(ew) * eh);
  std::vector<std::int64_t> hsum(static_cast<std::size_t>(w) * eh);

  // Patch distances are integer box sums, so computing them per offset with
  // running sums gives the same values as a direct per-pixel evaluation.
  for (int oy = -S; oy <= S; ++oy) {
    for (int ox = -S; ox <= S; ++ox) {
      for (int ey = 0; ey < eh; ++ey) {
        for (int ex = 0; ex < ew; ++ex) {
          const int zx = ex - P;
          const int zy = ey - P;
          const std::int64_t d = frame.clamped(zx, zy) - frame.clamped(zx + ox, zy + oy);
          diff[static_cast<std::size_t>(ey) * ew + ex] = d * d;
        }
      }
      for (int ey = 0; ey < eh; ++ey) {
        const std::int64_t* src = &diff[static_cast<std::size_t>(ey) * ew];
        std::int64_t* dst = &hsum[static_cast<std::size_t>(ey) * w];
        std::int64_t acc = 0;
        for (int i = 0; i < 2 * P + 1; ++i) acc += src[i];
        dst[0] = acc;
        for (int x = 1; x < w; ++x) {
          acc += src[x + 2 * P] - src[x - 1];
          dst[x] = acc;
        }
      }
      for (int x = 0; x < w; ++x) {
        std::int64_t acc = 0;
        for (int i = 0; i < 2 * P + 1; ++i) acc += hsum[static_cast<std::size_t>(i) * w + x];
        for (int y = 0; y < ht; ++y) {
          if (y > 0) {
            acc += hsum[static_cast<std::size_t>(y + 2 * P) * w + x] -
                   hsum[static_cast<std::size_t>(y - 1) * w + x];
          }
          const double d2 = static_cast<double>(acc) / patch_area;
          const double weight = std::exp(-d2 / h);
          num(x, y) += weight * (frame.clamped(x + ox, y + oy) - frame(x, y));
          den(x, y) += weight;
        }
      }
    }
  }

  RealPlane out(w, ht);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.samples()[i] = frame.samples()[i] + num.samples()[i] / den.samples()[i];
  }
  return out;
}

}  // namespace liftcodec
