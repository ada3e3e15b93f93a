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

#ifndef LIFTCODEC_MOTION_HPP_
#define LIFTCODEC_MOTION_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "liftcodec/core.hpp"

namespace liftcodec {

inline constexpr int kDefaultBlockSize = 8;
inline constexpr int kDefaultSearchRange = 8;

// Displacement of block content from the reference to the current frame:
// current(x, y) ~ reference(x - dx, y - dy).
struct MotionVector {
  int dx = 0;
  int dy = 0;

  bool operator==(const MotionVector&) const = default;
};

class MotionField {
 public:
  MotionField() = default;
  MotionField(int frame_width, int frame_height, int block_size = kDefaultBlockSize);

  int frame_width() const noexcept { return frame_width_; }
  int frame_height() const noexcept { return frame_height_; }
  int block_size() const noexcept { return block_size_; }
  int blocks_x() const noexcept { return blocks_x_; }
  int blocks_y() const noexcept { return blocks_y_; }
  std::size_t block_count() const noexcept { return vectors_.size(); }

  MotionVector& at(int bx, int by) noexcept {
    return vectors_[static_cast<std::size_t>(by) * blocks_x_ + bx];
  }
  const MotionVector& at(int bx, int by) const noexcept {
    return vectors_[static_cast<std::size_t>(by) * blocks_x_ + bx];
  }
  // Vector of the block covering pixel (x, y).
  const MotionVector& for_pixel(int x, int y) const noexcept {
    return at(x / block_size_, y / block_size_);
  }

  std::span<MotionVector> vectors() noexcept { return vectors_; }
  std::span<const MotionVector> vectors() const noexcept { return vectors_; }

  bool operator==(const MotionField&) const = default;

 private:
  int frame_width_ = 0;
  int frame_height_ = 0;
  int block_size_ = kDefaultBlockSize;
  int blocks_x_ = 0;
  int blocks_y_ = 0;
  std::vector<MotionVector> vectors_;
};

struct SearchParams {
  int range = kDefaultSearchRange;  // full search over [-range, range]^2, SAD metric
  int block_size = kDefaultBlockSize;
};

// Exhaustive block matching. Ties in SAD go to the smallest |dx|+|dy|, then
// the smallest dy, then the smallest dx.
MotionField estimate_motion(const Frame& reference, const Frame& current,
                            const SearchParams& params = {});

// out(x, y) = frame(x - dx, y - dy) using the vector of the block holding
// (x, y); reads outside the frame clamp to the border.
Frame warp(const Frame& frame, const MotionField& field);

// Reverse direction for the update step: every vector negated.
MotionField invert(const MotionField& field);

// Raw layout: u8 block size, u16 blocks_x, u16 blocks_y (little endian), then
// (i8 dx, i8 dy) per block in raster order.
std::vector<std::uint8_t> serialize_motion_field(const MotionField& field);
MotionField deserialize_motion_field(std::span<const std::uint8_t> bytes, int frame_width,
                                     int frame_height);

}  // namespace liftcodec

#endif  // LIFTCODEC_MOTION_HPP_
