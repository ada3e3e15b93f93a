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

#ifndef LIFTCODEC_METRICS_HPP_
#define LIFTCODEC_METRICS_HPP_

#include <iosfwd>
#include <limits>
#include <span>
#include <string>

#include "liftcodec/core.hpp"

namespace liftcodec {

inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

struct RdPoint {
  double rate = 0.0;  // total stream bytes
  double psnr_lp = 0.0;
  double ssim_lp = 0.0;
  std::string label;
};

// Mean squared error of each LP frame against both of its source frames.
double mse_lp(std::span<const Frame> lp, std::span<const Frame> odd, std::span<const Frame> even);
// 10 log10(4095^2 / MSE); kInfinitePsnr when MSE is zero.
double psnr_lp(std::span<const Frame> lp, std::span<const Frame> odd, std::span<const Frame> even);

// Gaussian-window SSIM (11x11, sigma 1.5) over the fully covered region.
double ssim(const Frame& a, const Frame& b);
double ssim_lp(std::span<const Frame> lp, std::span<const Frame> odd, std::span<const Frame> even);

// Average rate difference of test against anchor in percent at equal PSNR.
// Log rate is interpolated as a monotone piecewise cubic of PSNR and
// integrated over the common PSNR interval. Needs at least four finite
// points per curve.
double bd_rate(std::span<const RdPoint> anchor, std::span<const RdPoint> test);

double spearman(std::span<const double> x, std::span<const double> y);

void write_rd_csv(std::ostream& os, std::span<const RdPoint> points);

}  // namespace liftcodec

#endif  // LIFTCODEC_METRICS_HPP_
