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

#include "liftcodec/core.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

namespace liftcodec {
namespace {

Frame filled(int w, int h, std::int32_t v) {
  Frame f(w, h);
  for (auto& s : f.samples()) s = v;
  return f;
}

double noise_variance(const Sequence& noisy, const Sequence& clean) {
  double sum = 0.0, sum_sq = 0.0, n = 0.0;
  for (std::size_t t = 0; t < noisy.size(); ++t) {
    for (std::size_t i = 0; i < noisy[t].size(); ++i) {
      const double d = noisy[t].samples()[i] - clean[t].samples()[i];
      sum += d;
      sum_sq += d * d;
      n += 1.0;
    }
  }
  return sum_sq / n - (sum / n) * (sum / n);
}

TEST(CoreTest, PlaneClampedReadsReplicateBorder) {
  Plane<int> p(3, 2, std::vector<int>{1, 2, 3, 4, 5, 6});
  EXPECT_EQ(p.clamped(-5, 0), 1);
  EXPECT_EQ(p.clamped(9, 0), 3);
  EXPECT_EQ(p.clamped(1, 7), 5);
  EXPECT_EQ(p.clamped(-1, -1), 1);
  EXPECT_THROW(Plane<int>(2, 2, std::vector<int>{1, 2, 3}), CodecError);
  EXPECT_THROW(Plane<int>(-1, 2), CodecError);
}

TEST(CoreTest, FrameEqualityIgnoresRole) {
  Frame a = filled(4, 4, 7);
  Frame b(a, SequenceRole::kLowpass);
  EXPECT_EQ(a, b);
  b(0, 0) = 8;
  EXPECT_NE(a, b);
}

TEST(CoreTest, SplitFourFrames) {
  const Sequence seq({filled(2, 2, 1), filled(2, 2, 2), filled(2, 2, 3), filled(2, 2, 4)});
  const SplitSequence s = split(seq);
  ASSERT_EQ(s.odd.size(), 2u);
  EXPECT_EQ(s.odd[0], filled(2, 2, 1));
  EXPECT_EQ(s.odd[1], filled(2, 2, 3));
  EXPECT_EQ(s.even[0], filled(2, 2, 2));
  EXPECT_EQ(s.even[1], filled(2, 2, 4));
  EXPECT_EQ(interleave(s.odd, s.even), seq);
}

TEST(CoreTest, SplitTwoFrames) {
  const Sequence seq({filled(2, 2, 1), filled(2, 2, 2)});
  const SplitSequence s = split(seq);
  EXPECT_EQ(s.odd.size(), 1u);
  EXPECT_EQ(s.even[0], filled(2, 2, 2));
}

TEST(CoreTest, SplitOddLengthFails) {
  const Sequence seq({filled(2, 2, 1), filled(2, 2, 2), filled(2, 2, 3)});
  try {
    split(seq);
    FAIL();
  } catch (const CodecError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOddLengthSequence);
  }
}

TEST(CoreTest, InterleaveSplitIdentity) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    PhantomSpec spec;
    spec.width = 20;
    spec.height = 12;
    spec.frames = 2 * (1 + static_cast<int>(seed % 4));
    spec.noise_sigma = 5.0;
    const Sequence seq = generate_phantom(spec, seed);
    const SplitSequence s = split(seq);
    EXPECT_EQ(interleave(s.odd, s.even), seq);
  }
}

TEST(CoreTest, MixedSizesRejected) {
  EXPECT_THROW(Sequence({filled(2, 2, 0), filled(3, 2, 0)}), CodecError);
}

TEST(CoreTest, PhantomIsDeterministic) {
  PhantomSpec spec;
  spec.noise_sigma = 10.0;
  spec.noise_corr_radius = 2.0;
  EXPECT_EQ(generate_phantom(spec, 42), generate_phantom(spec, 42));
  EXPECT_NE(generate_phantom(spec, 42), generate_phantom(spec, 43));
}

TEST(CoreTest, PhantomShapeAndRange) {
  PhantomSpec spec;
  spec.noise_sigma = 30.0;
  const Sequence seq = generate_phantom(spec, 1);
  EXPECT_EQ(seq.size(), 16u);
  EXPECT_EQ(seq.width(), 64);
  EXPECT_EQ(seq.height(), 64);
  for (const Frame& f : seq.frames()) {
    for (std::int32_t v : f.samples()) {
      ASSERT_GE(v, 0);
      ASSERT_LE(v, kMaxSample);
    }
  }
}

TEST(CoreTest, NoiselessStaticPhantomRepeats) {
  PhantomSpec spec;
  spec.motion_dx = 0;
  spec.motion_dy = 0;
  const Sequence seq = generate_phantom(spec, 3);
  for (const Frame& f : seq.frames()) EXPECT_EQ(f, seq[0]);
}

TEST(CoreTest, NoiselessMovingPhantomChangesLocally) {
  PhantomSpec spec;
  spec.motion_dx = 1;
  const Sequence seq = generate_phantom(spec, 3);
  int changed = 0;
  for (std::size_t i = 0; i < seq[0].size(); ++i) changed += seq[0].samples()[i] != seq[1].samples()[i];
  EXPECT_GT(changed, 0);
  EXPECT_LT(changed, static_cast<int>(seq[0].size() / 2));
}

TEST(CoreTest, PhantomNoiseVarianceMatchesSigma) {
  // The generator draws geometry before noise, so a noiseless phantom with
  // the same seed is the clean reference.
  for (double radius : {0.0, 2.0}) {
    double mean_var = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      PhantomSpec spec;
      spec.frames = 2;
      spec.noise_corr_radius = radius;
      const Sequence clean = generate_phantom(spec, seed);
      spec.noise_sigma = 10.0;
      mean_var += noise_variance(generate_phantom(spec, seed), clean) / 20.0;
    }
    EXPECT_NEAR(mean_var, 100.0, 15.0) << "radius " << radius;
  }
}

TEST(CoreTest, CorrelatedNoiseIsSmoother) {
  auto lag_correlation = [](double radius) {
    PhantomSpec spec;
    spec.frames = 2;
    spec.noise_corr_radius = radius;
    const Sequence clean = generate_phantom(spec, 5);
    spec.noise_sigma = 20.0;
    const Sequence noisy = generate_phantom(spec, 5);
    double num = 0.0, den = 0.0;
    for (int y = 0; y < 64; ++y) {
      for (int x = 0; x + 1 < 64; ++x) {
        const double a = noisy[0](x, y) - clean[0](x, y);
        const double b = noisy[0](x + 1, y) - clean[0](x + 1, y);
        num += a * b;
        den += a * a;
      }
    }
    return num / den;
  };
  EXPECT_LT(std::abs(lag_correlation(0.0)), 0.1);
  EXPECT_GT(lag_correlation(2.0), 0.5);
}

TEST(CoreTest, ContainerLayout) {
  const Sequence seq({Frame(2, 1, std::vector<std::int32_t>{0x123, 4095}),
                      Frame(2, 1, std::vector<std::int32_t>{0, 1})});
  const auto bytes = serialize_sequence(seq);
  ASSERT_EQ(bytes.size(), kSequenceHeaderSize + 8);
  const std::vector<std::uint8_t> header{'S', 'E', 'Q', '0', 2, 0, 0, 0, 1, 0, 0, 0,
                                         2,   0,   0,   0,   12, 0, 0, 0};
  EXPECT_TRUE(std::equal(header.begin(), header.end(), bytes.begin()));
  for (std::size_t i = 20; i < 32; ++i) EXPECT_EQ(bytes[i], 0);
  EXPECT_EQ(bytes[32], 0x23);
  EXPECT_EQ(bytes[33], 0x01);
  EXPECT_EQ(bytes[34], 0xFF);
  EXPECT_EQ(bytes[35], 0x0F);
  EXPECT_EQ(sequence_bitdepth(bytes), 12);
  EXPECT_EQ(deserialize_sequence(bytes), seq);
}

TEST(CoreTest, ContainerErrors) {
  PhantomSpec spec;
  spec.width = 8;
  spec.height = 8;
  spec.frames = 2;
  auto bytes = serialize_sequence(generate_phantom(spec, 1));

  auto code_of = [](std::span<const std::uint8_t> b) {
    try {
      deserialize_sequence(b);
    } catch (const CodecError& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_EQ(code_of(bad), ErrorCode::kBadHeader);
  EXPECT_EQ(code_of(std::span(bytes).first(bytes.size() - 1)), ErrorCode::kTruncatedStream);
  EXPECT_EQ(code_of(std::span(bytes).first(10)), ErrorCode::kTruncatedStream);
  bytes.push_back(0);
  EXPECT_EQ(code_of(bytes), ErrorCode::kPayloadLengthMismatch);
}

TEST(CoreTest, OutOfRangeSampleRejected) {
  const Sequence seq({Frame(1, 1, std::vector<std::int32_t>{4096})});
  EXPECT_THROW(serialize_sequence(seq), CodecError);
}

TEST(CoreTest, FileRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "liftcodec_core_test";
  std::filesystem::create_directories(dir);
  PhantomSpec spec;
  spec.noise_sigma = 8.0;
  const Sequence seq = generate_phantom(spec, 9);
  write_sequence(dir / "a.seq", seq);
  EXPECT_EQ(read_sequence(dir / "a.seq"), seq);
  try {
    read_sequence(dir / "missing.seq");
    FAIL();
  } catch (const CodecError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  std::filesystem::remove_all(dir);
}

TEST(CoreTest, ErrorMessageCarriesOffset) {
  const CodecError e(ErrorCode::kCorruptStream, "bad bits", 17);
  EXPECT_EQ(e.offset(), 17u);
  EXPECT_NE(std::string(e.what()).find("17"), std::string::npos);
  EXPECT_STREQ(error_code_name(ErrorCode::kNoOverlap), "NoOverlap");
}

}  // namespace
}  // namespace liftcodec
