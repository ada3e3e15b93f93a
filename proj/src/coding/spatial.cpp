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

#include "liftcodec/coding/spatial.hpp"

#include <algorithm>

namespace liftcodec {
namespace {

// Floor division for the lifting steps; operands fit in int32.
inline std::int32_t floor_div2(std::int32_t v) { return v >> 1; }
inline std::int32_t floor_div4(std::int32_t v) { return v >> 2; }

// In: line[0..n) with stride. Out: lows then highs, same stride.
void forward_line(std::int32_t* line, std::ptrdiff_t stride, int n, std::vector<std::int32_t>& tmp) {
  if (n < 2) return;
  const int nl = (n + 1) / 2;
  const int nh = n / 2;
  tmp.resize(n);
  auto x = [&](int i) { return line[i * stride]; };
  std::int32_t* s = tmp.data();
  std::int32_t* d = tmp.data() + nl;
  for (int i = 0; i < nh; ++i) {
    const int right = (2 * i + 2 < n) ? 2 * i + 2 : 2 * i;
    d[i] = x(2 * i + 1) - floor_div2(x(2 * i) + x(right));
  }
  for (int i = 0; i < nl; ++i) {
    const std::int32_t dl = d[i > 0 ? i - 1 : 0];
    const std::int32_t dr = d[i < nh ? i : nh - 1];
    s[i] = x(2 * i) + floor_div4(dl + dr + 2);
  }
  for (int i = 0; i < n; ++i) line[i * stride] = tmp[i];
}

void inverse_line(std::int32_t* line, std::ptrdiff_t stride, int n, std::vector<std::int32_t>& tmp) {
  if (n < 2) return;
  const int nl = (n + 1) / 2;
  const int nh = n / 2;
  tmp.resize(n);
  const std::int32_t* s = line;
  const std::int32_t* d = line + nl * stride;
  auto dv = [&](int i) { return d[i * stride]; };
  for (int i = 0; i < nl; ++i) {
    const std::int32_t dl = dv(i > 0 ? i - 1 : 0);
    const std::int32_t dr = dv(i < nh ? i : nh - 1);
    tmp[2 * i] = s[i * stride] - floor_div4(dl + dr + 2);
  }
  for (int i = 0; i < nh; ++i) {
    const int right = (2 * i + 2 < n) ? 2 * i + 2 : 2 * i;
    tmp[2 * i + 1] = dv(i) + floor_div2(tmp[2 * i] + tmp[right]);
  }
  for (int i = 0; i < n; ++i) line[i * stride] = tmp[i];
}

}  // namespace

int spatial_levels_for(int width, int height, int max_levels) {
  int levels = 0;
  while (levels < max_levels && (width >> (levels + 1)) >= 1 && (height >> (levels + 1)) >= 1) {
    ++levels;
  }
  return levels;
}

std::vector<SubbandRect> subband_layout(int width, int height, int levels) {
  std::vector<int> ws{width}, hs{height};
  for (int l = 1; l <= levels; ++l) {
    ws.push_back((ws.back() + 1) / 2);
    hs.push_back((hs.back() + 1) / 2);
  }
  std::vector<SubbandRect> out;
  out.push_back({SubbandKind::kLowLow, levels, 0, 0, ws[levels], hs[levels]});
  for (int l = levels; l >= 1; --l) {
    const int lw = ws[l], lh = hs[l];
    const int pw = ws[l - 1], ph = hs[l - 1];
    out.push_back({SubbandKind::kHighLow, l, lw, 0, pw - lw, lh});
    out.push_back({SubbandKind::kLowHigh, l, 0, lh, lw, ph - lh});
    out.push_back({SubbandKind::kHighHigh, l, lw, lh, pw - lw, ph - lh});
  }
  return out;
}

CoefficientPlane spatial_forward(const Plane<std::int32_t>& frame, int levels) {
  if (levels < 0 || levels > spatial_levels_for(frame.width(), frame.height(), levels)) {
    throw CodecError(ErrorCode::kInvalidArgument, "too many spatial levels for frame size");
  }
  CoefficientPlane c(frame.width(), frame.height(),
                     std::vector<std::int32_t>(frame.samples().begin(), frame.samples().end()));
  std::vector<std::int32_t> tmp;
  int w = frame.width(), h = frame.height();
  for (int l = 0; l < levels; ++l) {
    for (int y = 0; y < h; ++y) forward_line(c.row(y), 1, w, tmp);
    for (int x = 0; x < w; ++x) forward_line(c.row(0) + x, c.width(), h, tmp);
    w = (w + 1) / 2;
    h = (h + 1) / 2;
  }
  return c;
}

Plane<std::int32_t> spatial_inverse(const CoefficientPlane& coeffs, int levels) {
  if (levels < 0 || levels > spatial_levels_for(coeffs.width(), coeffs.height(), levels)) {
    throw CodecError(ErrorCode::kInvalidArgument, "too many spatial levels for frame size");
  }
  Plane<std::int32_t> f = coeffs;
  std::vector<int> ws{coeffs.width()}, hs{coeffs.height()};
  for (int l = 1; l <= levels; ++l) {
    ws.push_back((ws.back() + 1) / 2);
    hs.push_back((hs.back() + 1) / 2);
  }
  std::vector<std::int32_t> tmp;
  for (int l = levels - 1; l >= 0; --l) {
    const int w = ws[l], h = hs[l];
    for (int x = 0; x < w; ++x) inverse_line(f.row(0) + x, f.width(), h, tmp);
    for (int y = 0; y < h; ++y) inverse_line(f.row(y), 1, w, tmp);
  }
  return f;
}

}  // namespace liftcodec
