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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>

namespace liftcodec {
namespace {

// Box-Muller on top of mt19937_64 so phantoms are identical across standard
// library implementations.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct Ellipse {
  double cx, cy;
  double ax, ay;
  double level;
  double texture;
  double period_x, period_y;
};

// Boundaries ramp linearly over about kEdgeWidth pixels.
constexpr double kEdgeWidth = 2.0;

double coverage(const Ellipse& e, double x, double y) {
  const double u = (x - e.cx) / e.ax;
  const double v = (y - e.cy) / e.ay;
  const double rho = std::sqrt(u * u + v * v);
  return std::clamp((1.0 - rho) * std::min(e.ax, e.ay) / kEdgeWidth + 0.5, 0.0, 1.0);
}

double textured_value(const Ellipse& e, double x, double y) {
  const double u = x - e.cx;
  const double v = y - e.cy;
  return e.level + e.texture * std::sin(2.0 * std::numbers::pi * u / e.period_x) *
                       std::cos(2.0 * std::numbers::pi * v / e.period_y);
}

std::vector<double> noise_kernel(double radius) {
  const int r = static_cast<int>(std::ceil(radius));
  if (r <= 0) return {1.0};
  const double sd = radius / 2.0;
  std::vector<double> k(2 * r + 1);
  double energy = 0.0;
  for (int i = -r; i <= r; ++i) {
    k[i + r] = std::exp(-(i * i) / (2.0 * sd * sd));
    energy += k[i + r] * k[i + r];
  }
  // Unit energy in 2-D (separable), so the marginal deviation stays sigma.
  const double norm = std::sqrt(energy);
  for (double& v : k) v /= norm;
  return k;
}

RealPlane correlated_noise(NormalSource& rng, int width, int height, double sigma,
                           const std::vector<double>& kernel) {
  const int r = static_cast<int>(kernel.size() / 2);
  const int pw = width + 2 * r;
  const int ph = height + 2 * r;
  RealPlane white(pw, ph);
  for (double& v : white.samples()) v = rng.next();
  if (r == 0) {
    for (double& v : white.samples()) v *= sigma;
    return white;
  }
  RealPlane rows(width, ph);
  for (int y = 0; y < ph; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int i = 0; i <= 2 * r; ++i) acc += kernel[i] * white(x + i, y);
      rows(x, y) = acc;
    }
  }
  RealPlane out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int i = 0; i <= 2 * r; ++i) acc += kernel[i] * rows(x, y + i);
      out(x, y) = sigma * acc;
    }
  }
  return out;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[pos + i]) << (8 * i);
  return v;
}

}  // namespace

Sequence::Sequence(std::vector<Frame> frames) : frames_(std::move(frames)) {
  for (const Frame& f : frames_) {
    if (!f.same_dims(frames_.front())) {
      throw CodecError(ErrorCode::kDimensionMismatch, "sequence frames differ in size");
    }
  }
}

SplitSequence split(const Sequence& seq) {
  if (seq.size() % 2 != 0) {
    throw CodecError(ErrorCode::kOddLengthSequence,
                     "sequence has " + std::to_string(seq.size()) + " frames");
  }
  std::vector<Frame> odd, even;
  odd.reserve(seq.size() / 2);
  even.reserve(seq.size() / 2);
  for (std::size_t i = 0; i < seq.size(); i += 2) {
    odd.push_back(seq[i]);
    even.push_back(seq[i + 1]);
  }
  return {Sequence(std::move(odd)), Sequence(std::move(even))};
}

Sequence interleave(const Sequence& odd, const Sequence& even) {
  if (odd.size() != even.size()) {
    throw CodecError(ErrorCode::kDimensionMismatch, "odd/even counts differ");
  }
  std::vector<Frame> frames;
  frames.reserve(2 * odd.size());
  for (std::size_t i = 0; i < odd.size(); ++i) {
    frames.push_back(odd[i]);
    frames.push_back(even[i]);
  }
  return Sequence(std::move(frames));
}

Sequence generate_phantom(const PhantomSpec& spec, std::uint64_t seed) {
  if (spec.width <= 0 || spec.height <= 0 || spec.frames <= 0) {
    throw CodecError(ErrorCode::kInvalidArgument, "phantom dimensions must be positive");
  }
  if (spec.noise_sigma < 0.0 || spec.noise_corr_radius < 0.0) {
    throw CodecError(ErrorCode::kInvalidArgument, "noise parameters must be non-negative");
  }
  NormalSource rng(seed);
  const double w = spec.width;
  const double h = spec.height;

  // Static anatomy: a large textured body on a shallow gradient.
  const Ellipse body{w * (0.5 + 0.04 * (rng.uniform() - 0.5)),
                     h * (0.5 + 0.04 * (rng.uniform() - 0.5)),
                     w * 0.44, h * 0.40, 1500.0, 15.0, 17.0, 13.0};

  // Moving structures; centers are chosen so the ellipses start left of the
  // middle and drift with the configured translation.
  std::vector<Ellipse> moving;
  const int count = 3;
  for (int i = 0; i < count; ++i) {
    Ellipse e{};
    e.cx = std::round(w * (0.25 + 0.3 * rng.uniform()));
    e.cy = std::round(h * (0.25 + 0.5 * rng.uniform()));
    e.ax = w * (0.07 + 0.08 * rng.uniform());
    e.ay = h * (0.07 + 0.08 * rng.uniform());
    e.level = (i == count - 1) ? 1300.0 : 1700.0 + 200.0 * rng.uniform();
    e.texture = 10.0 + 20.0 * rng.uniform();
    e.period_x = 7.0 + 8.0 * rng.uniform();
    e.period_y = 7.0 + 8.0 * rng.uniform();
    moving.push_back(e);
  }

  const auto kernel = noise_kernel(spec.noise_corr_radius);
  std::vector<Frame> frames;
  frames.reserve(spec.frames);
  for (int t = 0; t < spec.frames; ++t) {
    RealPlane clean(spec.width, spec.height);
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        double v = 700.0 + 250.0 * x / w + 150.0 * y / h;
        double c = coverage(body, x, y);
        v += c * (textured_value(body, x, y) - v);
        for (const Ellipse& base : moving) {
          Ellipse e = base;
          e.cx += static_cast<double>(t) * spec.motion_dx;
          e.cy += static_cast<double>(t) * spec.motion_dy;
          c = coverage(e, x, y);
          v += c * (textured_value(e, x, y) - v);
        }
        clean(x, y) = v;
      }
    }
    Frame frame(spec.width, spec.height);
    if (spec.noise_sigma > 0.0) {
      const RealPlane noise =
          correlated_noise(rng, spec.width, spec.height, spec.noise_sigma, kernel);
      for (std::size_t i = 0; i < frame.size(); ++i) {
        clean.samples()[i] += noise.samples()[i];
      }
    }
    for (std::size_t i = 0; i < frame.size(); ++i) {
      const double v = std::round(clean.samples()[i]);
      frame.samples()[i] = static_cast<std::int32_t>(std::clamp(v, 0.0, double(kMaxSample)));
    }
    frames.push_back(std::move(frame));
  }
  return Sequence(std::move(frames));
}

std::vector<std::uint8_t> serialize_sequence(const Sequence& seq, int bitdepth) {
  if (bitdepth < 1 || bitdepth > 16) {
    throw CodecError(ErrorCode::kInvalidArgument, "bitdepth must be in [1, 16]");
  }
  const std::int32_t max_value = (1 << bitdepth) - 1;
  std::vector<std::uint8_t> out{'S', 'E', 'Q', '0'};
  out.reserve(kSequenceHeaderSize + 2 * seq.size() * seq.width() * seq.height());
  put_u32(out, static_cast<std::uint32_t>(seq.width()));
  put_u32(out, static_cast<std::uint32_t>(seq.height()));
  put_u32(out, static_cast<std::uint32_t>(seq.size()));
  put_u32(out, static_cast<std::uint32_t>(bitdepth));
  out.resize(kSequenceHeaderSize, 0);
  for (const Frame& f : seq.frames()) {
    for (std::int32_t s : f.samples()) {
      if (s < 0 || s > max_value) {
        throw CodecError(ErrorCode::kInvalidArgument,
                         "sample " + std::to_string(s) + " outside bit depth");
      }
      out.push_back(static_cast<std::uint8_t>(s & 0xFF));
      out.push_back(static_cast<std::uint8_t>(s >> 8));
    }
  }
  return out;
}

int sequence_bitdepth(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), "SEQ0", 4) != 0) {
    throw CodecError(ErrorCode::kBadHeader, "missing SEQ0 magic", 0);
  }
  if (bytes.size() < kSequenceHeaderSize) {
    throw CodecError(ErrorCode::kTruncatedStream, "sequence header is truncated", 0);
  }
  return static_cast<int>(get_u32(bytes, 16));
}

Sequence deserialize_sequence(std::span<const std::uint8_t> bytes) {
  const int bitdepth = sequence_bitdepth(bytes);
  const std::uint32_t width = get_u32(bytes, 4);
  const std::uint32_t height = get_u32(bytes, 8);
  const std::uint32_t count = get_u32(bytes, 12);
  if (bitdepth < 1 || bitdepth > 16 || width > 65535 || height > 65535) {
    throw CodecError(ErrorCode::kBadHeader, "invalid sequence header fields", 4);
  }
  const std::size_t frame_bytes = 2ull * width * height;
  const std::size_t expected = kSequenceHeaderSize + frame_bytes * count;
  if (bytes.size() < expected) {
    throw CodecError(ErrorCode::kTruncatedStream, "sequence file is truncated", bytes.size());
  }
  if (bytes.size() > expected) {
    throw CodecError(ErrorCode::kPayloadLengthMismatch, "trailing bytes after last frame",
                     expected);
  }
  std::vector<Frame> frames;
  frames.reserve(count);
  std::size_t pos = kSequenceHeaderSize;
  for (std::uint32_t t = 0; t < count; ++t) {
    Frame f(static_cast<int>(width), static_cast<int>(height));
    for (std::int32_t& s : f.samples()) {
      s = static_cast<std::int32_t>(bytes[pos] | (bytes[pos + 1] << 8));
      pos += 2;
    }
    frames.push_back(std::move(f));
  }
  return Sequence(std::move(frames));
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CodecError(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CodecError(ErrorCode::kIo, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CodecError(ErrorCode::kIo, "write failed for " + path.string());
}

void write_sequence(const std::filesystem::path& path, const Sequence& seq) {
  write_file(path, serialize_sequence(seq));
}

Sequence read_sequence(const std::filesystem::path& path) {
  return deserialize_sequence(read_file(path));
}

}  // namespace liftcodec
