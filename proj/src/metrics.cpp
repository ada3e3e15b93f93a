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

#include "liftcodec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <vector>

namespace liftcodec {
namespace {

constexpr double kPeak = static_cast<double>(kMaxSample);
constexpr int kSsimRadius = 5;
constexpr double kSsimSigma = 1.5;

void check_triples(std::span<const Frame> lp, std::span<const Frame> odd,
                   std::span<const Frame> even) {
  if (lp.empty() || lp.size() != odd.size() || lp.size() != even.size()) {
    throw CodecError(ErrorCode::kDimensionMismatch, "LP and reference frame counts differ");
  }
  for (std::size_t t = 0; t < lp.size(); ++t) {
    if (!lp[t].same_dims(odd[t]) || !lp[t].same_dims(even[t])) {
      throw CodecError(ErrorCode::kDimensionMismatch, "LP and reference dimensions differ");
    }
  }
}

// Separable Gaussian filter over the valid region: output is
// (w - 2r) x (h - 2r).
RealPlane filter_valid(const RealPlane& in, std::span<const double> taps) {
  const int r = static_cast<int>(taps.size() / 2);
  const int ow = in.width() - 2 * r;
  const int oh = in.height() - 2 * r;
  RealPlane rows(ow, in.height());
  for (int y = 0; y < in.height(); ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int k = 0; k <= 2 * r; ++k) s += taps[k] * in(x + k, y);
      rows(x, y) = s;
    }
  }
  RealPlane out(ow, oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int k = 0; k <= 2 * r; ++k) s += taps[k] * rows(x, y + k);
      out(x, y) = s;
    }
  }
  return out;
}

std::vector<double> ssim_taps() {
  std::vector<double> taps(2 * kSsimRadius + 1);
  double sum = 0.0;
  for (int k = -kSsimRadius; k <= kSsimRadius; ++k) {
    taps[k + kSsimRadius] = std::exp(-(k * k) / (2.0 * kSsimSigma * kSsimSigma));
    sum += taps[k + kSsimRadius];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// Monotone cubic Hermite interpolant (Fritsch-Carlson slopes with the
// usual non-centered three-point end conditions).
class Pchip {
 public:
  Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    if (n == 2) {
      d_[0] = d_[1] = delta[0];
      return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) continue;
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
    d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  double operator()(double t) const {
    std::size_t i = static_cast<std::size_t>(
        std::upper_bound(x_.begin(), x_.end(), t) - x_.begin());
    i = std::clamp<std::size_t>(i, 1, x_.size() - 1) - 1;
    const double h = x_[i + 1] - x_[i];
    const double s = (t - x_[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * d_[i] +
           (-2 * s3 + 3 * s2) * y_[i + 1] + (s3 - s2) * h * d_[i + 1];
  }

  // Exact integral over [a, b]: two-point Gauss-Legendre on each cubic piece.
  double integrate(double a, double b) const {
    std::vector<double> cuts{a};
    for (double xi : x_) {
      if (xi > a && xi < b) cuts.push_back(xi);
    }
    cuts.push_back(b);
    const double g = 1.0 / std::sqrt(3.0);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
      const double half = 0.5 * (cuts[i + 1] - cuts[i]);
      total += half * ((*this)(mid - half * g) + (*this)(mid + half * g));
    }
    return total;
  }

  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }

 private:
  static double end_slope(double h0, double h1, double m0, double m1) {
    double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (d * m0 <= 0.0) return 0.0;
    if (m0 * m1 <= 0.0 && std::abs(d) > std::abs(3.0 * m0)) return 3.0 * m0;
    return d;
  }

  std::vector<double> x_, y_, d_;
};

Pchip log_rate_curve(std::span<const RdPoint> points, const char* which) {
  if (points.size() < 4) {
    throw CodecError(ErrorCode::kInvalidArgument,
                     std::string(which) + " curve needs at least 4 points");
  }
  // Equal PSNR values are merged by averaging their log rates.
  std::map<double, std::pair<double, int>> merged;
  for (const RdPoint& p : points) {
    if (!std::isfinite(p.psnr_lp) || !(p.rate > 0.0)) {
      throw CodecError(ErrorCode::kInvalidArgument,
                       std::string(which) + " curve has a non-finite PSNR or non-positive rate");
    }
    auto& [sum, count] = merged[p.psnr_lp];
    sum += std::log(p.rate);
    ++count;
  }
  if (merged.size() < 2) {
    throw CodecError(ErrorCode::kNoOverlap, std::string(which) + " curve spans no PSNR range");
  }
  std::vector<double> x, y;
  for (const auto& [psnr, acc] : merged) {
    x.push_back(psnr);
    y.push_back(acc.first / acc.second);
  }
  return Pchip(std::move(x), std::move(y));
}

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double mse_lp(std::span<const Frame> lp, std::span<const Frame> odd, std::span<const Frame> even) {
  check_triples(lp, odd, even);
  double sum = 0.0;
  double count = 0.0;
  for (std::size_t t = 0; t < lp.size(); ++t) {
    const auto l = lp[t].samples();
    const auto o = odd[t].samples();
    const auto e = even[t].samples();
    for (std::size_t i = 0; i < l.size(); ++i) {
      const double a = l[i] - o[i];
      const double b = l[i] - e[i];
      sum += 0.5 * (a * a + b * b);
    }
    count += static_cast<double>(l.size());
  }
  return sum / count;
}

double psnr_lp(std::span<const Frame> lp, std::span<const Frame> odd, std::span<const Frame> even) {
  const double mse = mse_lp(lp, odd, even);
  if (mse == 0.0) return kInfinitePsnr;
  return 10.0 * std::log10(kPeak * kPeak / mse);
}

double ssim(const Frame& a, const Frame& b) {
  if (!a.same_dims(b)) throw CodecError(ErrorCode::kDimensionMismatch, "SSIM inputs differ in size");
  if (a.width() <= 2 * kSsimRadius || a.height() <= 2 * kSsimRadius) {
    throw CodecError(ErrorCode::kFrameTooSmall, "SSIM needs frames of at least 11x11");
  }
  const int w = a.width();
  const int h = a.height();
  RealPlane pa(w, h), pb(w, h), aa(w, h), bb(w, h), ab(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double va = a(x, y);
      const double vb = b(x, y);
      pa(x, y) = va;
      pb(x, y) = vb;
      aa(x, y) = va * va;
      bb(x, y) = vb * vb;
      ab(x, y) = va * vb;
    }
  }
  const std::vector<double> taps = ssim_taps();
  const RealPlane mu_a = filter_valid(pa, taps);
  const RealPlane mu_b = filter_valid(pb, taps);
  const RealPlane e_aa = filter_valid(aa, taps);
  const RealPlane e_bb = filter_valid(bb, taps);
  const RealPlane e_ab = filter_valid(ab, taps);

  const double c1 = (0.01 * kPeak) * (0.01 * kPeak);
  const double c2 = (0.03 * kPeak) * (0.03 * kPeak);
  double sum = 0.0;
  for (int y = 0; y < mu_a.height(); ++y) {
    for (int x = 0; x < mu_a.width(); ++x) {
      const double ma = mu_a(x, y);
      const double mb = mu_b(x, y);
      const double va = e_aa(x, y) - ma * ma;
      const double vb = e_bb(x, y) - mb * mb;
      const double cov = e_ab(x, y) - ma * mb;
      sum += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
    }
  }
  return sum / (static_cast<double>(mu_a.width()) * mu_a.height());
}

double ssim_lp(std::span<const Frame> lp, std::span<const Frame> odd, std::span<const Frame> even) {
  check_triples(lp, odd, even);
  double sum = 0.0;
  for (std::size_t t = 0; t < lp.size(); ++t) {
    sum += 0.5 * (ssim(lp[t], odd[t]) + ssim(lp[t], even[t]));
  }
  return sum / static_cast<double>(lp.size());
}

double bd_rate(std::span<const RdPoint> anchor, std::span<const RdPoint> test) {
  const Pchip a = log_rate_curve(anchor, "anchor");
  const Pchip t = log_rate_curve(test, "test");
  const double lo = std::max(a.lo(), t.lo());
  const double hi = std::min(a.hi(), t.hi());
  if (!(hi > lo)) {
    throw CodecError(ErrorCode::kNoOverlap, "rate-distortion curves share no PSNR interval");
  }
  const double avg_diff = (t.integrate(lo, hi) - a.integrate(lo, hi)) / (hi - lo);
  return (std::exp(avg_diff) - 1.0) * 100.0;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw CodecError(ErrorCode::kInvalidArgument, "spearman needs two equal-length series");
  }
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

void write_rd_csv(std::ostream& os, std::span<const RdPoint> points) {
  os << "rate_bytes,psnr_db,ssim,label\n";
  const auto old_precision = os.precision(10);
  for (const RdPoint& p : points) {
    os << p.rate << ',';
    if (std::isinf(p.psnr_lp)) {
      os << "inf";
    } else {
      os << p.psnr_lp;
    }
    os << ',' << p.ssim_lp << ',' << p.label << '\n';
  }
  os.precision(old_precision);
}

}  // namespace liftcodec
