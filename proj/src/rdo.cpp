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

#include "liftcodec/rdo.hpp"

#include <cmath>
#include <tuple>

#include "liftcodec/coding/side_info.hpp"
#include "liftcodec/coding/subband.hpp"
#include "liftcodec/parallel.hpp"

namespace liftcodec {

struct PairEvaluator::HighpassEntry {
  Frame hp;
  std::size_t hp_bytes = 0;
  Frame update_input;
  double update_sigma_sq = 0.0;
};

namespace {

double sigma_sq_of(const Frame& f) {
  if (f.width() < 3 || f.height() < 3) return 0.0;
  return estimate_noise(f).sigma_sq;
}

}  // namespace

double lambda_schedule(int n) {
  if (n < 0 || n >= kLambdaCount) {
    throw CodecError(ErrorCode::kInvalidArgument,
                     "lambda index " + std::to_string(n) + " outside [0, 7]");
  }
  // 3^n is exact as an integer, so the product rounds once.
  std::int64_t power = 1;
  for (int i = 0; i < n; ++i) power *= static_cast<std::int64_t>(kLambdaRatio);
  return kLambdaStart * static_cast<double>(power);
}

bool preferred(const CostPoint& a, const CostPoint& b) {
  return std::make_tuple(a.cost, a.xi_p + a.xi_u, a.xi_u) <
         std::make_tuple(b.cost, b.xi_p + b.xi_u, b.xi_u);
}

double lowpass_distortion(const Frame& lp, const Frame& odd, const Frame& even) {
  if (!lp.same_dims(odd) || !lp.same_dims(even)) {
    throw CodecError(ErrorCode::kDimensionMismatch, "lowpass and source frames differ in size");
  }
  if (lp.empty()) return 0.0;
  std::int64_t sse = 0;
  for (std::size_t i = 0; i < lp.size(); ++i) {
    const std::int64_t a = lp.samples()[i] - odd.samples()[i];
    const std::int64_t b = lp.samples()[i] - even.samples()[i];
    sse += a * a + b * b;
  }
  return static_cast<double>(sse) / (2.0 * static_cast<double>(lp.size()));
}

PairEvaluator::PairEvaluator(Frame odd, Frame even, MotionField mv, DenoiserSettings filter)
    : odd_(std::move(odd)), even_(std::move(even)), mv_(std::move(mv)), filter_(filter) {
  if (!odd_.same_dims(even_)) {
    throw CodecError(ErrorCode::kDimensionMismatch, "odd and even frames differ in size");
  }
  levels_ = spatial_levels_for(odd_.width(), odd_.height());
  prediction_ = warp(odd_, mv_);
  predict_sigma_sq_ = sigma_sq_of(prediction_);
  mv_bytes_ = encode_mv(mv_).size();
}

PairEvaluator::~PairEvaluator() = default;

const PairEvaluator::HighpassEntry& PairEvaluator::highpass(int xi_p) {
  const double h = static_cast<double>(xi_p) * predict_sigma_sq_;
  auto it = highpass_.find(h);
  if (it != highpass_.end()) return *it->second;

  auto entry = std::make_unique<HighpassEntry>();
  const Frame pred = prediction_term(prediction_, filter_, h);
  entry->hp = Frame(odd_.width(), odd_.height(), SequenceRole::kHighpass);
  for (std::size_t i = 0; i < odd_.size(); ++i) {
    entry->hp.samples()[i] = even_.samples()[i] - pred.samples()[i];
  }
  entry->hp_bytes = encode_frame(entry->hp, levels_).size();
  entry->update_input = warp(entry->hp, invert(mv_));
  entry->update_sigma_sq = sigma_sq_of(entry->update_input);
  return *highpass_.emplace(h, std::move(entry)).first->second;
}

PairEvaluator::Terms PairEvaluator::terms(int xi_p, int xi_u) {
  if (xi_p < 0 || xi_u < 0) {
    throw CodecError(ErrorCode::kInvalidArgument, "noise parameters must be >= 0");
  }
  const HighpassEntry& hp = highpass(xi_p);
  const double h_u = static_cast<double>(xi_u) * hp.update_sigma_sq;
  const auto key = std::make_pair(&hp, h_u);
  auto it = lowpass_.find(key);
  if (it == lowpass_.end()) {
    const Frame upd = update_term(hp.update_input, filter_, h_u);
    Frame lp(odd_.width(), odd_.height(), SequenceRole::kLowpass);
    for (std::size_t i = 0; i < lp.size(); ++i) {
      lp.samples()[i] = odd_.samples()[i] + upd.samples()[i];
    }
    const double d = lowpass_distortion(lp, odd_, even_);
    it = lowpass_.emplace(key, std::make_pair(d, encode_frame(lp, levels_).size())).first;
  }
  Terms t;
  t.distortion = it->second.first;
  t.mv_bytes = mv_bytes_;
  t.lp_bytes = it->second.second;
  t.hp_bytes = hp.hp_bytes;
  return t;
}

CostPoint PairEvaluator::evaluate(int xi_p, int xi_u, double lambda) {
  const Terms t = terms(xi_p, xi_u);
  CostPoint c;
  c.xi_p = xi_p;
  c.xi_u = xi_u;
  c.distortion = t.distortion;
  c.rate = t.rate();
  c.cost = t.distortion + lambda * static_cast<double>(c.rate);
  return c;
}

LiftingPair PairEvaluator::pair(int xi_p, int xi_u) {
  return analyze(odd_, even_, mv_, DenoiseHooks{filter_, xi_p, xi_u});
}

CostPoint evaluate_cost(const Frame& odd, const Frame& even, const MotionField& mv, int xi_p,
                        int xi_u, const DenoiserSettings& filter, double lambda) {
  const LiftingPair pair = analyze(odd, even, mv, DenoiseHooks{filter, xi_p, xi_u});
  const int levels = spatial_levels_for(odd.width(), odd.height());
  CostPoint c;
  c.xi_p = xi_p;
  c.xi_u = xi_u;
  c.distortion = lowpass_distortion(pair.lp, odd, even);
  c.rate = encode_mv(mv).size() + encode_frame(pair.lp, levels).size() +
           encode_frame(pair.hp, levels).size();
  c.cost = c.distortion + lambda * static_cast<double>(c.rate);
  return c;
}

RingSearchResult ring_search(const std::function<CostPoint(int, int)>& evaluate, int xi_max) {
  if (xi_max < 0) throw CodecError(ErrorCode::kInvalidArgument, "xi_max must be >= 0");
  RingSearchResult result;
  result.chosen = evaluate(0, 0);
  result.evaluated.push_back(result.chosen);
  result.iterations = 1;

  for (int ring = 1; ring <= xi_max; ++ring) {
    const double best_so_far = result.chosen.cost;
    bool have_ring_best = false;
    CostPoint ring_best;
    auto visit = [&](int p, int u) {
      const CostPoint c = evaluate(p, u);
      result.evaluated.push_back(c);
      if (!have_ring_best || preferred(c, ring_best)) {
        ring_best = c;
        have_ring_best = true;
      }
    };
    // The L-shaped ring: the xi_u = ring row, then the xi_p = ring column.
    for (int p = 0; p <= ring; ++p) visit(p, ring);
    for (int u = ring - 1; u >= 0; --u) visit(ring, u);
    ++result.iterations;

    if (preferred(ring_best, result.chosen)) result.chosen = ring_best;
    if (!(ring_best.cost <= best_so_far)) break;
  }
  return result;
}

RingSearchResult ring_search(const Frame& odd, const Frame& even, const MotionField& mv,
                             const DenoiserSettings& filter, double lambda, int xi_max) {
  PairEvaluator evaluator(odd, even, mv, filter);
  return ring_search([&](int p, int u) { return evaluator.evaluate(p, u, lambda); }, xi_max);
}

std::vector<RdoPairResult> encode_sequence_rdo(const Sequence& seq, const RdoParams& params) {
  if (!(params.lambda >= 0.0)) {
    throw CodecError(ErrorCode::kInvalidArgument, "lambda must be non-negative");
  }
  const SplitSequence parts = split(seq);
  std::vector<RdoPairResult> results(parts.odd.size());
  parallel_for(results.size(), [&](std::size_t t) {
    const Frame& odd = parts.odd[t];
    const Frame& even = parts.even[t];
    MotionField mv = estimate_motion(odd, even, params.search);
    PairEvaluator evaluator(odd, even, mv, params.filter);
    results[t].search = ring_search(
        [&](int p, int u) { return evaluator.evaluate(p, u, params.lambda); }, params.xi_max);
    results[t].pair = evaluator.pair(results[t].search.chosen.xi_p, results[t].search.chosen.xi_u);
  });
  return results;
}

}  // namespace liftcodec
