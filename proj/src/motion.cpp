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

#include "liftcodec/motion.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <tuple>

namespace liftcodec {
namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

std::uint64_t block_sad(const Frame& reference, const Frame& current, int x0, int y0, int x1,
                        int y1, int dx, int dy) {
  std::uint64_t sad = 0;
  const bool interior = x0 - dx >= 0 && y0 - dy >= 0 && x1 - dx <= reference.width() &&
                        y1 - dy <= reference.height();
  for (int y = y0; y < y1; ++y) {
    const std::int32_t* cur = current.row(y);
    if (interior) {
      const std::int32_t* ref = reference.row(y - dy) - dx;
      for (int x = x0; x < x1; ++x) sad += static_cast<std::uint64_t>(std::abs(cur[x] - ref[x]));
    } else {
      for (int x = x0; x < x1; ++x) {
        sad += static_cast<std::uint64_t>(std::abs(cur[x] - reference.clamped(x - dx, y - dy)));
      }
    }
  }
  return sad;
}

}  // namespace

MotionField::MotionField(int frame_width, int frame_height, int block_size)
    : frame_width_(frame_width), frame_height_(frame_height), block_size_(block_size) {
  if (frame_width < 0 || frame_height < 0 || block_size <= 0 || block_size > 255) {
    throw CodecError(ErrorCode::kInvalidArgument, "invalid motion field geometry");
  }
  blocks_x_ = ceil_div(frame_width, block_size);
  blocks_y_ = ceil_div(frame_height, block_size);
  vectors_.assign(static_cast<std::size_t>(blocks_x_) * blocks_y_, MotionVector{});
}

MotionField estimate_motion(const Frame& reference, const Frame& current,
                            const SearchParams& params) {
  if (!reference.same_dims(current)) {
    throw CodecError(ErrorCode::kDimensionMismatch, "motion estimation frames differ in size");
  }
  if (params.range < 0 || params.range > 127) {
    throw CodecError(ErrorCode::kInvalidArgument, "search range must be in [0, 127]");
  }
  MotionField field(reference.width(), reference.height(), params.block_size);
  const int bs = params.block_size;
  for (int by = 0; by < field.blocks_y(); ++by) {
    for (int bx = 0; bx < field.blocks_x(); ++bx) {
      const int x0 = bx * bs;
      const int y0 = by * bs;
      const int x1 = std::min(x0 + bs, reference.width());
      const int y1 = std::min(y0 + bs, reference.height());
      auto best = std::make_tuple(std::numeric_limits<std::uint64_t>::max(), 0, 0, 0);
      for (int dy = -params.range; dy <= params.range; ++dy) {
        for (int dx = -params.range; dx <= params.range; ++dx) {
          const auto key = std::make_tuple(block_sad(reference, current, x0, y0, x1, y1, dx, dy),
                                           std::abs(dx) + std::abs(dy), dy, dx);
          if (key < best) best = key;
        }
      }
      field.at(bx, by) = {std::get<3>(best), std::get<2>(best)};
    }
  }
  return field;
}

Frame warp(const Frame& frame, const MotionField& field) {
  if (frame.width() != field.frame_width() || frame.height() != field.frame_height()) {
    throw CodecError(ErrorCode::kDimensionMismatch, "motion field does not match frame");
  }
  Frame out(frame.width(), frame.height(), frame.role());
  for (int y = 0; y < frame.height(); ++y) {
    std::int32_t* dst = out.row(y);
    for (int x = 0; x < frame.width(); ++x) {
      const MotionVector& v = field.for_pixel(x, y);
      dst[x] = frame.clamped(x - v.dx, y - v.dy);
    }
  }
  return out;
}

MotionField invert(const MotionField& field) {
  MotionField out = field;
  for (MotionVector& v : out.vectors()) v = {-v.dx, -v.dy};
  return out;
}

std::vector<std::uint8_t> serialize_motion_field(const MotionField& field) {
  std::vector<std::uint8_t> out;
  out.reserve(5 + 2 * field.block_count());
  out.push_back(static_cast<std::uint8_t>(field.block_size()));
  out.push_back(static_cast<std::uint8_t>(field.blocks_x() & 0xFF));
  out.push_back(static_cast<std::uint8_t>(field.blocks_x() >> 8));
  out.push_back(static_cast<std::uint8_t>(field.blocks_y() & 0xFF));
  out.push_back(static_cast<std::uint8_t>(field.blocks_y() >> 8));
  for (const MotionVector& v : field.vectors()) {
    if (v.dx < -128 || v.dx > 127 || v.dy < -128 || v.dy > 127) {
      throw CodecError(ErrorCode::kValueOverCap, "motion vector exceeds 8-bit range");
    }
    out.push_back(static_cast<std::uint8_t>(static_cast<std::int8_t>(v.dx)));
    out.push_back(static_cast<std::uint8_t>(static_cast<std::int8_t>(v.dy)));
  }
  return out;
}

MotionField deserialize_motion_field(std::span<const std::uint8_t> bytes, int frame_width,
                                     int frame_height) {
  if (bytes.size() < 5) {
    throw CodecError(ErrorCode::kTruncatedStream, "motion field header truncated", bytes.size());
  }
  if (bytes[0] == 0) throw CodecError(ErrorCode::kCorruptStream, "zero block size", 0);
  MotionField field(frame_width, frame_height, bytes[0]);
  const int bx = bytes[1] | (bytes[2] << 8);
  const int by = bytes[3] | (bytes[4] << 8);
  if (bx != field.blocks_x() || by != field.blocks_y()) {
    throw CodecError(ErrorCode::kCorruptStream, "block counts do not match frame size", 1);
  }
  if (bytes.size() != 5 + 2 * field.block_count()) {
    throw CodecError(ErrorCode::kPayloadLengthMismatch, "motion field length mismatch", 5);
  }
  std::size_t pos = 5;
  for (MotionVector& v : field.vectors()) {
    v.dx = static_cast<std::int8_t>(bytes[pos]);
    v.dy = static_cast<std::int8_t>(bytes[pos + 1]);
    pos += 2;
  }
  return field;
}

}  // namespace liftcodec
