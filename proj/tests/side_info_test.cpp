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

#include "liftcodec/coding/side_info.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace liftcodec {
namespace {

MotionField random_field(std::mt19937_64& rng) {
  const int w = 1 + static_cast<int>(rng() % 80);
  const int h = 1 + static_cast<int>(rng() % 80);
  const int block = 1 + static_cast<int>(rng() % 16);
  MotionField f(w, h, block);
  const int range = (rng() % 4 == 0) ? 127 : 1 + static_cast<int>(rng() % 8);
  for (auto& v : f.vectors()) {
    v.dx = static_cast<int>(rng() % (2 * range + 1)) - range;
    v.dy = static_cast<int>(rng() % (2 * range + 1)) - range;
    if (rng() % 50 == 0) v.dx = -128;
  }
  return f;
}

TEST(SideInfoTest, MotionRoundTrips) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const MotionField f = random_field(rng);
    const auto bytes = encode_mv(f);
    ASSERT_EQ(decode_mv(bytes, f.frame_width(), f.frame_height()), f) << "trial " << trial;
  }
}

TEST(SideInfoTest, UniformFieldIsCheap) {
  MotionField f(256, 256);
  for (auto& v : f.vectors()) v = {3, -1};
  // 1024 identical vectors: only the first residual is nonzero.
  EXPECT_LT(encode_mv(f).size(), 5u + 20u);
}

TEST(SideInfoTest, MotionHeaderChecks) {
  MotionField f(32, 32);
  auto bytes = encode_mv(f);
  EXPECT_THROW(decode_mv(std::span(bytes).first(3), 32, 32), CodecError);
  try {
    decode_mv(bytes, 64, 32);
    FAIL();
  } catch (const CodecError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptStream);
  }
}

TEST(SideInfoTest, XiRoundTrips) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const int xi_max = static_cast<int>(rng() % 120);
    const int pairs = 1 + static_cast<int>(rng() % 20);
    std::vector<std::pair<int, int>> values(pairs);
    XiEncoder enc(xi_max);
    for (auto& [p, u] : values) {
      p = static_cast<int>(rng() % (xi_max + 1));
      u = (rng() % 3 == 0) ? 0 : static_cast<int>(rng() % (xi_max + 1));
      enc.encode(p, u);
    }
    const auto bytes = enc.finish();
    XiDecoder dec(bytes, xi_max);
    for (const auto& v : values) ASSERT_EQ(dec.decode(), v) << "trial " << trial;
  }
}

TEST(SideInfoTest, XiCapDropsTerminator) {
  // xi_max = 0 leaves nothing to code.
  XiEncoder zero(0);
  for (int i = 0; i < 8; ++i) zero.encode(0, 0);
  EXPECT_TRUE(zero.finish().empty());

  XiEncoder enc(3);
  enc.encode(3, 3);
  const auto bytes = enc.finish();
  XiDecoder dec(bytes, 3);
  EXPECT_EQ(dec.decode(), std::make_pair(3, 3));
}

TEST(SideInfoTest, XiOverCapRejected) {
  XiEncoder enc(10);
  try {
    enc.encode(11, 0);
    FAIL();
  } catch (const CodecError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValueOverCap);
  }
  EXPECT_THROW(enc.encode(0, -1), CodecError);
}

TEST(SideInfoTest, AllZeroXiIsNearlyFree) {
  XiEncoder enc(100);
  for (int i = 0; i < 64; ++i) enc.encode(0, 0);
  EXPECT_LE(enc.finish().size(), 4u);
}

}  // namespace
}  // namespace liftcodec
