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

#include "liftcodec/coding/arith.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace liftcodec {
namespace {

struct Symbol {
  int bit;
  int ctx;  // -1 = bypass
};

std::vector<Symbol> random_symbols(std::mt19937_64& rng, int count, int contexts) {
  std::vector<double> p1(contexts);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (double& p : p1) p = std::pow(uni(rng), 3.0);  // mostly skewed
  std::vector<Symbol> out(count);
  for (Symbol& s : out) {
    s.ctx = static_cast<int>(rng() % (contexts + 1)) - 1;
    const double p = s.ctx < 0 ? 0.5 : p1[s.ctx];
    s.bit = uni(rng) < p;
  }
  return out;
}

std::vector<std::uint8_t> encode_all(const std::vector<Symbol>& syms, int contexts) {
  ArithEncoder enc;
  std::vector<BinContext> ctx(contexts);
  for (const Symbol& s : syms) {
    if (s.ctx < 0) {
      enc.encode_bypass(s.bit);
    } else {
      enc.encode(s.bit, ctx[s.ctx]);
    }
  }
  return enc.finish();
}

TEST(ArithTest, EmptyStreamHasNoBytes) {
  ArithEncoder enc;
  EXPECT_TRUE(enc.finish().empty());
}

TEST(ArithTest, RandomRoundTrips) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int contexts = 1 + static_cast<int>(rng() % 8);
    const auto syms = random_symbols(rng, 1 + static_cast<int>(rng() % 2000), contexts);
    const auto bytes = encode_all(syms, contexts);
    ArithDecoder dec(bytes);
    std::vector<BinContext> ctx(contexts);
    for (std::size_t i = 0; i < syms.size(); ++i) {
      const int bit = syms[i].ctx < 0 ? dec.decode_bypass() : dec.decode(ctx[syms[i].ctx]);
      ASSERT_EQ(bit, syms[i].bit) << "trial " << trial << " symbol " << i;
    }
  }
}

TEST(ArithTest, RawBitsRoundTrip) {
  std::mt19937_64 rng(5);
  ArithEncoder enc;
  std::vector<std::pair<std::uint32_t, int>> values;
  for (int i = 0; i < 2000; ++i) {
    const int n = static_cast<int>(rng() % 33);
    const std::uint32_t v = n == 32 ? static_cast<std::uint32_t>(rng())
                                    : static_cast<std::uint32_t>(rng() & ((1ull << n) - 1));
    values.emplace_back(v, n);
    enc.encode_bits(v, n);
  }
  const auto bytes = enc.finish();
  ArithDecoder dec(bytes);
  for (const auto& [v, n] : values) ASSERT_EQ(dec.decode_bits(n), v);
}

TEST(ArithTest, AllZeroSymbolsCompressToAFewBytes) {
  ArithEncoder enc;
  BinContext ctx;
  for (int i = 0; i < 100000; ++i) enc.encode(0, ctx);
  // Probability saturates at 1 - 31/32768, about 0.0014 bits per symbol.
  EXPECT_LT(enc.finish().size(), 40u);
}

TEST(ArithTest, SkewedSourceApproachesEntropy) {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution b(0.1);
  const int n = 200000;
  ArithEncoder enc;
  BinContext ctx;
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    const int bit = b(rng);
    ones += bit;
    enc.encode(bit, ctx);
  }
  const double p = static_cast<double>(ones) / n;
  const double entropy_bytes = n * (-p * std::log2(p) - (1 - p) * std::log2(1 - p)) / 8.0;
  const double size = static_cast<double>(enc.finish().size());
  EXPECT_GT(size, entropy_bytes * 0.99);
  EXPECT_LT(size, entropy_bytes * 1.03);
}

TEST(ArithTest, BypassCostsOneBitPerSymbol) {
  std::mt19937_64 rng(8);
  ArithEncoder enc;
  for (int i = 0; i < 80000; ++i) enc.encode_bypass(static_cast<int>(rng() & 1));
  const auto size = enc.finish().size();
  EXPECT_GE(size, 9999u);
  EXPECT_LE(size, 10002u);
}

TEST(ArithTest, DecoderReadsZerosPastEnd) {
  ArithEncoder enc;
  BinContext ctx;
  for (int i = 0; i < 50; ++i) enc.encode(i % 3 == 0, ctx);
  const auto bytes = enc.finish();
  ArithDecoder dec(bytes);
  BinContext dctx;
  for (int i = 0; i < 50; ++i) ASSERT_EQ(dec.decode(dctx), i % 3 == 0);
  for (int i = 0; i < 100; ++i) dec.decode_bypass();
  EXPECT_GT(dec.overread(), 0u);
}

TEST(ArithTest, ContextProbabilityStaysInRange) {
  BinContext ctx;
  EXPECT_EQ(ctx.p0(), BinContext::kOne / 2);
  for (int i = 0; i < 5000; ++i) {
    ctx.update(0);
    ASSERT_LE(ctx.p0(), BinContext::kOne - 31);
  }
  EXPECT_GT(ctx.p0(), BinContext::kOne - 200);
  for (int i = 0; i < 5000; ++i) {
    ctx.update(1);
    ASSERT_GE(ctx.p0(), 31u);
  }
  EXPECT_LT(ctx.p0(), 200u);
}

}  // namespace
}  // namespace liftcodec
