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

namespace liftcodec {
namespace {

constexpr std::uint32_t kTop = 1u << 24;

}  // namespace

void ArithEncoder::shift_low() {
  if (static_cast<std::uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    const std::uint8_t carry = static_cast<std::uint8_t>(low_ >> 32);
    std::uint8_t temp = cache_;
    do {
      if (first_byte_) {
        first_byte_ = false;
      } else {
        out_.push_back(static_cast<std::uint8_t>(temp + carry));
      }
      temp = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<std::uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00FFFFFFu) << 8;
}

void ArithEncoder::normalize() {
  while (range_ < kTop) {
    range_ <<= 8;
    shift_low();
  }
}

void ArithEncoder::encode(int bit, BinContext& ctx) {
  const std::uint32_t bound = (range_ >> BinContext::kBits) * ctx.p0();
  if (bit) {
    low_ += bound;
    range_ -= bound;
  } else {
    range_ = bound;
  }
  ctx.update(bit);
  ++symbols_;
  normalize();
}

void ArithEncoder::encode_bypass(int bit) {
  range_ >>= 1;
  if (bit) low_ += range_;
  ++symbols_;
  normalize();
}

void ArithEncoder::encode_bits(std::uint32_t value, int n) {
  for (int i = n - 1; i >= 0; --i) encode_bypass(static_cast<int>((value >> i) & 1u));
}

std::vector<std::uint8_t> ArithEncoder::finish() {
  if (symbols_ == 0) return {};
  // Pick the value in [low, low + range) with the most trailing zero bits.
  const std::uint64_t hi = low_ + range_ - 1;
  for (int k = 32; k >= 0; --k) {
    const std::uint64_t mask = (k == 0) ? 0 : ((std::uint64_t{1} << k) - 1);
    const std::uint64_t v = (low_ + mask) & ~mask;
    if (v <= hi) {
      low_ = v;
      break;
    }
  }
  for (int i = 0; i < 5; ++i) shift_low();
  while (!out_.empty() && out_.back() == 0) out_.pop_back();
  return std::move(out_);
}

ArithDecoder::ArithDecoder(std::span<const std::uint8_t> bytes) : in_(bytes) {
  // The encoder drops the leading zero byte; four bytes fill the code register.
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next_byte();
}

std::uint8_t ArithDecoder::next_byte() {
  if (pos_ < in_.size()) return in_[pos_++];
  ++overread_;
  return 0;
}

void ArithDecoder::normalize() {
  while (range_ < kTop) {
    range_ <<= 8;
    code_ = (code_ << 8) | next_byte();
  }
}

int ArithDecoder::decode(BinContext& ctx) {
  const std::uint32_t bound = (range_ >> BinContext::kBits) * ctx.p0();
  int bit;
  if (code_ < bound) {
    range_ = bound;
    bit = 0;
  } else {
    code_ -= bound;
    range_ -= bound;
    bit = 1;
  }
  ctx.update(bit);
  normalize();
  return bit;
}

int ArithDecoder::decode_bypass() {
  range_ >>= 1;
  int bit = 0;
  if (code_ >= range_) {
    code_ -= range_;
    bit = 1;
  }
  normalize();
  return bit;
}

std::uint32_t ArithDecoder::decode_bits(int n) {
  std::uint32_t v = 0;
  for (int i = 0; i < n; ++i) v = (v << 1) | static_cast<std::uint32_t>(decode_bypass());
  return v;
}

}  // namespace liftcodec
