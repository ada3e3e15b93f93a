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

#ifndef LIFTCODEC_RDO_HPP_
#define LIFTCODEC_RDO_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "liftcodec/core.hpp"
#include "liftcodec/denoise.hpp"
#include "liftcodec/lifting.hpp"
#include "liftcodec/motion.hpp"

namespace liftcodec {

inline constexpr int kLambdaCount = 8;
inline constexpr double kLambdaStart = 0.05;
inline constexpr double kLambdaRatio = 3.0;
inline constexpr int kDefaultXiMax = 100;

// lambda_n = 0.05 * 3^n for n in [0, 7].
double lambda_schedule(int n);

struct CostPoint {
  int xi_p = 0;
  int xi_u = 0;
  double distortion = 0.0;  // MSE of LP against both source frames
  std::size_t rate = 0;     // bytes of the MV + LP + HP payloads
  double cost = 0.0;        // distortion + lambda * rate
};

// Strict ordering used to pick among evaluated points: lower cost, then
// smaller xi_p + xi_u, then smaller xi_u.
bool preferred(const CostPoint& a, const CostPoint& b);

struct RingSearchResult {
  CostPoint chosen;
  std::vector<CostPoint> evaluated;  // in evaluation order
  int iterations = 0;                // rings evaluated, ring 0 included
};

// Distortion and rate of one lifting pair for arbitrary noise parameters.
// Intermediates that depend only on xi_p (the highpass frame, its payload
// size, the update-step input) are computed once per distinct filter
// strength and reused. Not thread-safe.
class PairEvaluator {
 public:
  struct Terms {
    double distortion = 0.0;
    std::size_t mv_bytes = 0;
    std::size_t lp_bytes = 0;
    std::size_t hp_bytes = 0;

    std::size_t rate() const noexcept { return mv_bytes + lp_bytes + hp_bytes; }
  };

  PairEvaluator(Frame odd, Frame even, MotionField mv, DenoiserSettings filter);
  ~PairEvaluator();
  PairEvaluator(const PairEvaluator&) = delete;
  PairEvaluator& operator=(const PairEvaluator&) = delete;

  Terms terms(int xi_p, int xi_u);
  CostPoint evaluate(int xi_p, int xi_u, double lambda);
  LiftingPair pair(int xi_p, int xi_u);

 private:
  struct HighpassEntry;
  const HighpassEntry& highpass(int xi_p);

  Frame odd_;
  Frame even_;
  MotionField mv_;
  DenoiserSettings filter_;
  int levels_;
  Frame prediction_;
  double predict_sigma_sq_ = 0.0;
  std::size_t mv_bytes_ = 0;
  std::map<double, std::unique_ptr<HighpassEntry>> highpass_;
  std::map<std::pair<const HighpassEntry*, double>, std::pair<double, std::size_t>> lowpass_;
};

// Two-reference lowpass distortion: mean over pixels of
// ((LP - odd)^2 + (LP - even)^2) / 2.
double lowpass_distortion(const Frame& lp, const Frame& odd, const Frame& even);

// Runs the lifting step with the given parameters and codes LP, HP and MV.
CostPoint evaluate_cost(const Frame& odd, const Frame& even, const MotionField& mv, int xi_p,
                        int xi_u, const DenoiserSettings& filter, double lambda);

// Ring search: ring i holds every (xi_p, xi_u) with max(xi_p, xi_u) == i.
// Ring 0 is (0, 0). After each ring the search continues while the ring's
// minimum cost is lower than or equal to the best cost of all earlier rings,
// and never beyond ring xi_max. The result is the preferred point among
// everything evaluated.
RingSearchResult ring_search(const std::function<CostPoint(int, int)>& evaluate, int xi_max);
RingSearchResult ring_search(const Frame& odd, const Frame& even, const MotionField& mv,
                             const DenoiserSettings& filter, double lambda,
                             int xi_max = kDefaultXiMax);

struct RdoParams {
  double lambda = kLambdaStart;
  DenoiserSettings filter;
  int xi_max = kDefaultXiMax;
  SearchParams search;
};

struct RdoPairResult {
  LiftingPair pair;
  RingSearchResult search;
};

// Per pair: block motion estimation odd -> even, ring search, and the lifting
// pair for the chosen parameters. Pairs run on the worker pool.
std::vector<RdoPairResult> encode_sequence_rdo(const Sequence& seq, const RdoParams& params);

}  // namespace liftcodec

#endif  // LIFTCODEC_RDO_HPP_
