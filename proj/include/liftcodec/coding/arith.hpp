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

#ifndef LIFTCODEC_CODING_ARITH_HPP_
#define LIFTCODEC_CODING_ARITH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace liftcodec {

// Adaptive probability of a zero bit, 15-bit precision. Two estimators with
// fast (1/16) and slow (1/128) adaptation are averaged.
class BinContext {
 public:
  static constexpr int kBits = 15;
  static constexpr std::uint32_t kOne = 1u << kBits;

  std::uint32_t p0() const noexcept {
    const std::uint32_t p = (static_cast<std::uint32_t>(fast_) + slow_) >> 1;
    return p < kMin ? kMin : (p > kOne - kMin ? kOne - kMin : p);
  }

  void update(int bit) noexcept {
    if (bit) {
      fast_ -= fast_ >> 4;
      slow_ -= slow_ >> 7;
    } else {
      fast_ += (kOne - fast_) >> 4;
      slow_ += (kOne - slow_) >> 7;
    }
  }

 private:
  static constexpr std::uint32_t kMin = 31;
  std::uint16_t fast_ = kOne / 2;
  std::uint16_t slow_ = kOne / 2;
};

// Binary range coder with carry propagation through a cached byte (LZMA
// style). The always-zero leading byte is not emitted, and the final interval
// is closed with the value carrying the most trailing zero bits, which are
// then trimmed; the decoder reads zeros past the end of its input.
class ArithEncoder {
 public:
  void encode(int bit, BinContext& ctx);
  void encode_bypass(int bit);
  // n <= 32 raw bits, most significant first.
  void encode_bits(std::uint32_t value, int n);
  std::vector<std::uint8_t> finish();

  // Symbols coded so far; zero means finish() returns an empty buffer.
  std::size_t symbol_count() const noexcept { return symbols_; }

 private:
  void shift_low();
  void normalize();

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  bool first_byte_ = true;
  std::size_t symbols_ = 0;
  std::vector<std::uint8_t> out_;
};

class ArithDecoder {
 public:
  explicit ArithDecoder(std::span<const std::uint8_t> bytes);

  int decode(BinContext& ctx);
  int decode_bypass();
  std::uint32_t decode_bits(int n);

  // Bytes requested beyond the end of the input (served as zeros).
  std::size_t overread() const noexcept { return overread_; }

 private:
  std::uint8_t next_byte();
  void normalize();

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::size_t overread_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t code_ = 0;
};

}  // namespace liftcodec

#endif  // LIFTCODEC_CODING_ARITH_HPP_
