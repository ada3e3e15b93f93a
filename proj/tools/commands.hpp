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

#ifndef LIFTCODEC_TOOLS_COMMANDS_HPP_
#define LIFTCODEC_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liftcodec/coding/codec.hpp"
#include "liftcodec/core.hpp"
#include "liftcodec/metrics.hpp"

namespace liftcodec::cli {

enum class Command { kEncode, kDecode, kSweep, kSynth, kReport };

struct RunConfig {
  Command command = Command::kEncode;
  std::string input;
  std::string output;
  std::optional<int> lambda_index;
  std::optional<double> lambda;
  std::optional<int> fixed_xi;
  bool mctf = false;
  DenoiserKind denoiser = DenoiserKind::kGaussian;
  double gaussian_scale = kDefaultGaussianScale;
  std::uint64_t seed = 1;
  int xi_max = kDefaultXiMax;
  int block_size = kDefaultBlockSize;
  int search_range = 8;
  int xi_stride = 1;
  PhantomSpec phantom;
};

// Maps the mode flags onto an encoder configuration. At most one of
// --mctf, --fixed-xi and --lambda/--lambda-index may be given; with none,
// the search runs at lambda index 0.
EncoderConfig encoder_config(const RunConfig& cfg);

struct XiStats {
  int pairs = 0;
  int p_min = 0, p_max = 0;
  double p_mean = 0.0, p_var = 0.0;
  int u_min = 0, u_max = 0;
  double u_mean = 0.0, u_var = 0.0;
  double u_zero_fraction = 0.0;
};

XiStats xi_stats(std::span<const LiftingPair> pairs);
RdPoint rd_point(const Sequence& source, const EncodeResult& result, std::string label);

struct SweepOptions {
  DenoiserSettings filter;
  int xi_max = kDefaultXiMax;
  int xi_stride = 1;
  SearchParams search;
};

struct SweepResult {
  RdPoint mctf;
  std::vector<RdPoint> ref;  // fixed xi = 1, 1 + stride, ...
  std::vector<int> ref_xi;
  std::vector<RdPoint> rdo;  // lambda index 0..7
  std::vector<XiStats> rdo_xi;
  double bd_hq = 0.0;  // REF -> RDO over lambda 0..4, NaN if not computable
  double bd_lq = 0.0;  // REF -> RDO over lambda 4..7
};

SweepResult run_sweep(const Sequence& seq, const SweepOptions& options);

int cmd_synth(const RunConfig& cfg, std::ostream& out);
int cmd_encode(const RunConfig& cfg, std::ostream& out);
int cmd_decode(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_report(const RunConfig& cfg, std::ostream& out);

int run(const RunConfig& cfg, std::ostream& out);

// Parses argv and runs; errors are printed to err and give exit code 1
// (2 for usage errors).
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace liftcodec::cli

#endif  // LIFTCODEC_TOOLS_COMMANDS_HPP_
