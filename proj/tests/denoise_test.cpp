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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace liftcodec {
namespace {

Frame noisy_flat(int w, int h, double level, double sigma, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n(0.0, sigma);
  Frame f(w, h);
  for (auto& s : f.samples()) s = static_cast<std::int32_t>(std::lround(level + n(rng)));
  return f;
}

double total_variation(const RealPlane& p) {
  double tv = 0.0;
  for (int y = 0; y < p.height(); ++y) {
    for (int x = 0; x < p.width(); ++x) {
      if (x + 1 < p.width()) tv += std::abs(p(x + 1, y) - p(x, y));
      if (y + 1 < p.height()) tv += std::abs(p(x, y + 1) - p(x, y));
    }
  }
  return tv;
}

std::int32_t at(const Frame& f, int x, int y) {
  return f.clamped(x, y);
}

// Direct evaluation: every pixel and offset computes its own patch distance.
RealPlane nlm_oracle(const Frame& f, double h) {
  RealPlane out(f.width(), f.height());
  const int P = kNlmPatchRadius, S = kNlmSearchRadius;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      double num = 0.0, den = 0.0;
      for (int oy = -S; oy <= S; ++oy) {
        for (int ox = -S; ox <= S; ++ox) {
          std::int64_t ssd = 0;
          for (int py = -P; py <= P; ++py) {
            for (int px = -P; px <= P; ++px) {
              const std::int64_t d = at(f, x + px, y + py) - at(f, x + ox + px, y + oy + py);
              ssd += d * d;
            }
          }
          const double w = std::exp(-(static_cast<double>(ssd) / 25.0) / h);
          num += w * (at(f, x + ox, y + oy) - f(x, y));
          den += w;
        }
      }
      out(x, y) = f(x, y) + num / den;
    }
  }
  return out;
}

RealPlane gaussian_oracle(const Frame& f, double h, double scale) {
  const double sd = std::sqrt(h) / scale;
  const int r = static_cast<int>(std::ceil(3.0 * sd));
  std::vector<double> k(2 * r + 1);
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) sum += k[i + r] = std::exp(-i * i / (2.0 * sd * sd));
  RealPlane out(f.width(), f.height());
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      double acc = 0.0;
      for (int j = -r; j <= r; ++j) {
        for (int i = -r; i <= r; ++i) acc += k[i + r] * k[j + r] * at(f, x + i, y + j);
      }
      out(x, y) = acc / (sum * sum);
    }
  }
  return out;
}

TEST(DenoiseTest, ImmerkaerOnFlatNoise) {
  for (double sigma : {5.0, 10.0, 40.0}) {
    double mean = 0.0;
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
      mean += estimate_noise(noisy_flat(256, 256, 2000.0, sigma, seed)).sigma_sq / 20.0;
    }
    EXPECT_NEAR(mean / (sigma * sigma), 1.0, 0.10) << sigma;
  }
}

TEST(DenoiseTest, ImmerkaerIgnoresPlanes) {
  Frame f(32, 32);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) f(x, y) = 100 + 3 * x + 7 * y;
  }
  EXPECT_EQ(estimate_noise(f).sigma_sq, 0.0);
}

TEST(DenoiseTest, ImmerkaerKnownValue) {
  // Single impulse of 10 in a 3x3 frame: |r| = 40.
  Frame f(3, 3);
  f(1, 1) = 10;
  const double sigma = std::sqrt(std::acos(-1.0) / 2.0) * 40.0 / 6.0;
  EXPECT_DOUBLE_EQ(estimate_noise(f).sigma_sq, sigma * sigma);
}

TEST(DenoiseTest, FrameTooSmall) {
  try {
    estimate_noise(Frame(2, 5));
    FAIL();
  } catch (const CodecError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFrameTooSmall);
  }
}

TEST(DenoiseTest, FilterStrength) {
  EXPECT_DOUBLE_EQ(filter_strength(0, {37.0}), 0.0);
  EXPECT_DOUBLE_EQ(filter_strength(12, {2.5}), 30.0);
  EXPECT_THROW(filter_strength(-1, {1.0}), CodecError);
}

TEST(DenoiseTest, ZeroStrengthIsIdentity) {
  const Frame f = noisy_flat(20, 20, 500.0, 50.0, 1);
  for (DenoiserKind kind : {DenoiserKind::kGaussian, DenoiserKind::kNonLocalMeans}) {
    const RealPlane out = denoise(f, {kind}, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      ASSERT_EQ(out.samples()[i], static_cast<double>(f.samples()[i]));
    }
  }
}

TEST(DenoiseTest, ConstantImageExact) {
  Frame f(24, 18);
  for (auto& s : f.samples()) s = 3071;
  for (DenoiserKind kind : {DenoiserKind::kGaussian, DenoiserKind::kNonLocalMeans}) {
    for (double h : {1.0, 1e3, 1e6}) {
      const RealPlane out = denoise(f, {kind}, h);
      for (double v : out.samples()) ASSERT_EQ(v, 3071.0);
    }
  }
}

TEST(DenoiseTest, GaussianPreservesImpulseMass) {
  Frame f(41, 41);
  f(20, 20) = 1000;
  const RealPlane out = gaussian_denoise(f, 64.0 * 64.0 * 4.0);  // sd = 2
  double sum = 0.0;
  for (double v : out.samples()) sum += v;
  EXPECT_NEAR(sum, 1000.0, 1e-9);
  EXPECT_LT(out(20, 20), 1000.0);
  EXPECT_NEAR(out(19, 20), out(21, 20), 1e-9);
}

TEST(DenoiseTest, GaussianMatchesDirectConvolution) {
  const Frame f = noisy_flat(23, 17, 1000.0, 200.0, 2);
  for (double h : {500.0, 5000.0, 50000.0}) {
    const RealPlane got = gaussian_denoise(f, h, 32.0);
    const RealPlane want = gaussian_oracle(f, h, 32.0);
    for (std::size_t i = 0; i < got.size(); ++i) {
      ASSERT_NEAR(got.samples()[i], want.samples()[i], 1e-8) << h;
    }
  }
}

TEST(DenoiseTest, GaussianScaleSetsWidth) {
  const Frame f = noisy_flat(32, 32, 1000.0, 100.0, 3);
  // Same deviation through h and K_g.
  const RealPlane a = gaussian_denoise(f, 1024.0 * 4.0, 32.0);
  const RealPlane b = gaussian_denoise(f, 256.0 * 4.0, 16.0);
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_NEAR(a.samples()[i], b.samples()[i], 1e-9);
  EXPECT_THROW(gaussian_denoise(f, 1.0, 0.0), CodecError);
}

TEST(DenoiseTest, TotalVariationNonIncreasing) {
  const Frame f = noisy_flat(48, 48, 1500.0, 30.0, 4);
  const double sigma_sq = estimate_noise(f).sigma_sq;
  double prev = total_variation(denoise(f, {DenoiserKind::kGaussian}, 0.0));
  for (int xi : {1, 5, 10, 50, 100, 500, 2000}) {
    const double tv =
        total_variation(denoise(f, {DenoiserKind::kGaussian}, filter_strength(xi, {sigma_sq})));
    EXPECT_LE(tv, prev + 1e-6) << xi;
    prev = tv;
  }
  // NLM is not a convolution; near saturation TV wobbles slightly.
  prev = total_variation(denoise(f, {DenoiserKind::kNonLocalMeans}, 0.0));
  for (int xi : {1, 5, 10, 50, 100}) {
    const double tv = total_variation(
        denoise(f, {DenoiserKind::kNonLocalMeans}, filter_strength(xi, {sigma_sq})));
    EXPECT_LE(tv, prev * 1.005) << xi;
    prev = tv;
  }
}

TEST(DenoiseTest, NlmMatchesDirectEvaluation) {
  const Frame f = noisy_flat(17, 14, 800.0, 60.0, 5);
  for (double h : {10.0, 3600.0, 1e5}) {
    const RealPlane got = nlm_denoise(f, h);
    const RealPlane want = nlm_oracle(f, h);
    for (std::size_t i = 0; i < got.size(); ++i) {
      ASSERT_EQ(got.samples()[i], want.samples()[i]) << h << " " << i;
    }
  }
}

TEST(DenoiseTest, NlmPreservesStepEdge) {
  Frame f(32, 32);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) f(x, y) = x < 16 ? 1000 : 3000;
  }
  const RealPlane out = nlm_denoise(f, 100.0);
  EXPECT_NEAR(out(15, 10), 1000.0, 1e-6);
  EXPECT_NEAR(out(16, 10), 3000.0, 1e-6);
}

TEST(DenoiseTest, NegativeStrengthRejected) {
  const Frame f(8, 8);
  EXPECT_THROW(gaussian_denoise(f, -1.0), CodecError);
  EXPECT_THROW(nlm_denoise(f, -1.0), CodecError);
  EXPECT_THROW(nlm_denoise(f, std::nan("")), CodecError);
}

}  // namespace
}  // namespace liftcodec
