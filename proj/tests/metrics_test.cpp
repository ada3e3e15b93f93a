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

#include "liftcodec/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

namespace liftcodec {
namespace {

Frame random_frame(int w, int h, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(0, kMaxSample);
  Frame f(w, h);
  for (auto& s : f.samples()) s = d(rng);
  return f;
}

Frame smooth_frame(int w, int h) {
  Frame f(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) f(x, y) = 1000 + 20 * x + 10 * y + ((x / 4 + y / 4) % 2) * 300;
  }
  return f;
}

// log rate = a + b * psnr, sampled at the given PSNRs.
std::vector<RdPoint> log_linear(double a, double b, std::vector<double> psnrs) {
  std::vector<RdPoint> out;
  for (double p : psnrs) out.push_back({std::exp(a + b * p), p, 0.0, ""});
  return out;
}

TEST(MetricsTest, IdenticalFramesInfinitePsnr) {
  const Frame f = random_frame(16, 16, 1);
  const std::vector<Frame> v{f};
  EXPECT_EQ(mse_lp(v, v, v), 0.0);
  EXPECT_EQ(psnr_lp(v, v, v), kInfinitePsnr);
  EXPECT_DOUBLE_EQ(ssim(f, f), 1.0);
  EXPECT_DOUBLE_EQ(ssim_lp(v, v, v), 1.0);
}

TEST(MetricsTest, UnitOffsetPsnr) {
  const Frame f = random_frame(16, 16, 2);
  Frame g = f;
  for (auto& s : g.samples()) s += 1;
  const std::vector<Frame> lp{g}, src{f};
  EXPECT_DOUBLE_EQ(mse_lp(lp, src, src), 1.0);
  EXPECT_NEAR(psnr_lp(lp, src, src), 20.0 * std::log10(4095.0), 1e-12);
  EXPECT_NEAR(psnr_lp(lp, src, src), 72.2451, 1e-4);
}

TEST(MetricsTest, MseUsesBothReferences) {
  const std::vector<Frame> lp{Frame(1, 1, std::vector<std::int32_t>{10})};
  const std::vector<Frame> odd{Frame(1, 1, std::vector<std::int32_t>{8})};
  const std::vector<Frame> even{Frame(1, 1, std::vector<std::int32_t>{16})};
  EXPECT_DOUBLE_EQ(mse_lp(lp, odd, even), 20.0);
  EXPECT_THROW(mse_lp(lp, odd, std::span<const Frame>{}), CodecError);
}

TEST(MetricsTest, SsimProperties) {
  const Frame a = smooth_frame(32, 32);
  Frame b = a;
  std::mt19937 rng(3);
  std::normal_distribution<double> n(0.0, 30.0);
  for (auto& s : b.samples()) s += static_cast<std::int32_t>(std::lround(n(rng)));
  const double ab = ssim(a, b);
  EXPECT_DOUBLE_EQ(ab, ssim(b, a));
  EXPECT_LT(ab, 1.0);
  EXPECT_GT(ab, 0.5);
  EXPECT_LT(ssim(a, random_frame(32, 32, 4)), 0.5);
  EXPECT_THROW(ssim(Frame(10, 10), Frame(10, 10)), CodecError);
  EXPECT_THROW(ssim(Frame(12, 12), Frame(13, 12)), CodecError);
}

TEST(MetricsTest, SsimConstantFrames) {
  Frame a(16, 16), b(16, 16);
  for (auto& s : a.samples()) s = 2000;
  for (auto& s : b.samples()) s = 2000;
  EXPECT_DOUBLE_EQ(ssim(a, b), 1.0);
  for (auto& s : b.samples()) s = 2100;
  // Only the luminance term differs: (2 mu_a mu_b + C1) / (mu_a^2 + mu_b^2 + C1).
  const double c1 = (0.01 * 4095.0) * (0.01 * 4095.0);
  EXPECT_NEAR(ssim(a, b), (2.0 * 2000 * 2100 + c1) / (2000.0 * 2000 + 2100.0 * 2100 + c1), 1e-12);
}

TEST(MetricsTest, BdRateIdenticalCurves) {
  const auto a = log_linear(5.0, 0.1, {30, 33, 36, 40});
  EXPECT_NEAR(bd_rate(a, a), 0.0, 1e-12);
}

TEST(MetricsTest, BdRateConstantRatio) {
  const auto a = log_linear(5.0, 0.1, {30, 33, 36, 40, 41});
  auto t = a;
  for (RdPoint& p : t) p.rate *= 0.99;
  EXPECT_NEAR(bd_rate(a, t), -1.0, 1e-9);
  EXPECT_NEAR(bd_rate(t, a), 100.0 / 99.0, 1e-9);
}

TEST(MetricsTest, BdRateLinearOracle) {
  // Both curves are log-linear, which the interpolant reproduces exactly, so
  // the mean log-rate gap over the overlap [32, 38] is analytic.
  const auto a = log_linear(4.0, 0.12, {30, 32, 35, 38});
  const auto t = log_linear(4.3, 0.11, {32, 34, 36, 38, 40});
  const double gap = 0.3 - 0.01 * (32.0 + 38.0) / 2.0;
  EXPECT_NEAR(bd_rate(a, t), (std::exp(gap) - 1.0) * 100.0, 1e-9);
}

TEST(MetricsTest, BdRateReversedRolesRoughlyCancel) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(-0.02, 0.02);
  const auto a = log_linear(6.0, 0.08, {28, 31, 34, 37, 40});
  auto t = a;
  for (RdPoint& p : t) p.rate *= 1.0 + d(rng);
  EXPECT_LT(std::abs(bd_rate(a, t) + bd_rate(t, a)), 0.1);
}

TEST(MetricsTest, BdRateMergesEqualPsnr) {
  auto a = log_linear(5.0, 0.1, {30, 33, 36, 40});
  a.push_back({std::exp(5.0 + 0.1 * 40), 40.0, 0.0, ""});
  EXPECT_NEAR(bd_rate(a, log_linear(5.0, 0.1, {30, 33, 36, 40})), 0.0, 1e-12);
}

TEST(MetricsTest, BdRateErrors) {
  const auto a = log_linear(5.0, 0.1, {30, 31, 32, 33});
  const auto far = log_linear(5.0, 0.1, {40, 41, 42, 43});
  try {
    bd_rate(a, far);
    FAIL();
  } catch (const CodecError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoOverlap);
  }
  EXPECT_THROW(bd_rate(log_linear(5.0, 0.1, {30, 31, 32}), a), CodecError);
  auto flat = log_linear(5.0, 0.1, {30, 30, 30, 30});
  try {
    bd_rate(a, flat);
    FAIL();
  } catch (const CodecError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoOverlap);
  }
  auto inf = a;
  inf[0].psnr_lp = kInfinitePsnr;
  EXPECT_THROW(bd_rate(inf, a), CodecError);
}

TEST(MetricsTest, Spearman) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(spearman(x, std::vector<double>{10, 20, 30, 40, 50}), 1.0);
  EXPECT_DOUBLE_EQ(spearman(x, std::vector<double>{5, 4, 3, 2, 1}), -1.0);
  EXPECT_DOUBLE_EQ(spearman(x, std::vector<double>{2, 1, 4, 3, 5}), 0.8);
  EXPECT_DOUBLE_EQ(spearman(x, std::vector<double>{1, 1, 1, 1, 1}), 0.0);
  // Ties take average ranks: y ranks are 1.5, 1.5, 3, 4, 5.
  const double r = spearman(x, std::vector<double>{0, 0, 1, 2, 3});
  EXPECT_NEAR(r, 9.5 / std::sqrt(10.0 * 9.5), 1e-12);
  EXPECT_THROW(spearman(x, std::vector<double>{1}), CodecError);
}

TEST(MetricsTest, RdCsv) {
  std::ostringstream os;
  const std::vector<RdPoint> pts{{1234.0, 40.5, 0.9, "mctf"}, {99.0, kInfinitePsnr, 1.0, "x"}};
  write_rd_csv(os, pts);
  EXPECT_EQ(os.str(), "rate_bytes,psnr_db,ssim,label\n1234,40.5,0.9,mctf\n99,inf,1,x\n");
}

}  // namespace
}  // namespace liftcodec
