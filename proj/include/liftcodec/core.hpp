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

#ifndef LIFTCODEC_CORE_HPP_
#define LIFTCODEC_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "liftcodec/error.hpp"

namespace liftcodec {

inline constexpr int kBitDepth = 12;
inline constexpr std::int32_t kMaxSample = (1 << kBitDepth) - 1;

// Row-major 2-D array. Out-of-range reads through clamped() replicate the
// border sample.
template <typename T>
class Plane {
 public:
  using value_type = T;

  Plane() = default;
  Plane(int width, int height, T fill = T{})
      : width_(checked_dim(width)),
        height_(checked_dim(height)),
        samples_(static_cast<std::size_t>(width_) * height_, fill) {}
  Plane(int width, int height, std::vector<T> samples)
      : width_(checked_dim(width)),
        height_(checked_dim(height)),
        samples_(std::move(samples)) {
    if (samples_.size() != static_cast<std::size_t>(width_) * height_) {
      throw CodecError(ErrorCode::kDimensionMismatch,
                       "sample count does not match width*height");
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }

  T& operator()(int x, int y) noexcept {
    return samples_[static_cast<std::size_t>(y) * width_ + x];
  }
  const T& operator()(int x, int y) const noexcept {
    return samples_[static_cast<std::size_t>(y) * width_ + x];
  }

  T clamped(int x, int y) const noexcept {
    x = x < 0 ? 0 : (x >= width_ ? width_ - 1 : x);
    y = y < 0 ? 0 : (y >= height_ ? height_ - 1 : y);
    return (*this)(x, y);
  }

  T* row(int y) noexcept { return samples_.data() + static_cast<std::size_t>(y) * width_; }
  const T* row(int y) const noexcept {
    return samples_.data() + static_cast<std::size_t>(y) * width_;
  }

  std::span<T> samples() noexcept { return samples_; }
  std::span<const T> samples() const noexcept { return samples_; }

  template <typename U>
  bool same_dims(const Plane<U>& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  bool operator==(const Plane& other) const = default;

 private:
  static int checked_dim(int v) {
    if (v < 0) throw CodecError(ErrorCode::kInvalidArgument, "negative dimension");
    return v;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> samples_;
};

using RealPlane = Plane<double>;

enum class SequenceRole : std::uint8_t { kOriginal, kLowpass, kHighpass };

// An integer image. The role is metadata only: equality compares
// dimensions and samples.
class Frame : public Plane<std::int32_t> {
 public:
  Frame() = default;
  Frame(int width, int height, SequenceRole role = SequenceRole::kOriginal)
      : Plane(width, height), role_(role) {}
  Frame(int width, int height, std::vector<std::int32_t> samples,
        SequenceRole role = SequenceRole::kOriginal)
      : Plane(width, height, std::move(samples)), role_(role) {}
  Frame(Plane<std::int32_t> plane, SequenceRole role)
      : Plane(std::move(plane)), role_(role) {}

  SequenceRole role() const noexcept { return role_; }
  void set_role(SequenceRole role) noexcept { role_ = role; }

  bool operator==(const Frame& other) const {
    return static_cast<const Plane&>(*this) == static_cast<const Plane&>(other);
  }

 private:
  SequenceRole role_ = SequenceRole::kOriginal;
};

// Ordered frames of uniform size. Index 0 is the first (odd) frame f_1.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<Frame> frames);

  int width() const noexcept { return frames_.empty() ? 0 : frames_.front().width(); }
  int height() const noexcept { return frames_.empty() ? 0 : frames_.front().height(); }
  std::size_t size() const noexcept { return frames_.size(); }
  bool empty() const noexcept { return frames_.empty(); }

  const Frame& operator[](std::size_t i) const { return frames_[i]; }
  std::span<const Frame> frames() const noexcept { return frames_; }

  bool operator==(const Sequence& other) const = default;

 private:
  std::vector<Frame> frames_;
};

struct SplitSequence {
  Sequence odd;   // f_1, f_3, ... (0-based positions 0, 2, ...)
  Sequence even;  // f_2, f_4, ...
};

SplitSequence split(const Sequence& seq);
Sequence interleave(const Sequence& odd, const Sequence& even);

struct PhantomSpec {
  int width = 64;
  int height = 64;
  int frames = 16;
  // Per-frame translation of the foreground ellipses.
  int motion_dx = 1;
  int motion_dy = 0;
  double noise_sigma = 0.0;
  // Truncation radius of the Gaussian noise-shaping kernel; its standard
  // deviation is radius / 2. Zero gives white noise.
  double noise_corr_radius = 0.0;
};

Sequence generate_phantom(const PhantomSpec& spec, std::uint64_t seed);

// Raw container: 32-byte header ("SEQ0", u32 width, u32 height, u32 frames,
// u32 bitdepth, 12 reserved zero bytes) followed by little-endian u16 samples.
inline constexpr std::size_t kSequenceHeaderSize = 32;

std::vector<std::uint8_t> serialize_sequence(const Sequence& seq, int bitdepth = kBitDepth);
Sequence deserialize_sequence(std::span<const std::uint8_t> bytes);
int sequence_bitdepth(std::span<const std::uint8_t> bytes);

void write_sequence(const std::filesystem::path& path, const Sequence& seq);
Sequence read_sequence(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace liftcodec

#endif  // LIFTCODEC_CORE_HPP_
