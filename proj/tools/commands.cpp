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

#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

#include "liftcodec/coding/bitstream.hpp"
#include "liftcodec/denoise.hpp"
#include "liftcodec/parallel.hpp"

namespace liftcodec::cli {
namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw CodecError(ErrorCode::kIo, "cannot open " + path + " for writing");
  return os;
}

void require_path(const std::string& path, const char* flag) {
  if (path.empty()) {
    throw CodecError(ErrorCode::kInvalidArgument, std::string(flag) + " is required");
  }
}

std::vector<Frame> lowpass_frames(std::span<const LiftingPair> pairs) {
  std::vector<Frame> lp;
  lp.reserve(pairs.size());
  for (const LiftingPair& p : pairs) lp.push_back(p.lp);
  return lp;
}

void print_xi_stats(std::ostream& out, const XiStats& s) {
  out << "  xi_p min/max/mean/var: " << s.p_min << " / " << s.p_max << " / " << s.p_mean
      << " / " << s.p_var << "\n"
      << "  xi_u min/max/mean/var: " << s.u_min << " / " << s.u_max << " / " << s.u_mean
      << " / " << s.u_var << "\n"
      << "  pairs with xi_u = 0:   " << s.u_zero_fraction * 100.0 << "%\n";
}

void print_sizes(std::ostream& out, const StreamSizes& s) {
  out << "total bytes:     " << s.total << "\n"
      << "  header:        " << s.header << "\n"
      << "  xi side info:  " << s.side_info << "\n"
      << "  motion:        " << s.mv << "\n"
      << "  lowpass:       " << s.lp << "\n"
      << "  highpass:      " << s.hp << "\n"
      << "  framing:       " << s.framing << "\n";
}

// NaN when the curves are too short or do not overlap.
double bd_or_nan(std::span<const RdPoint> anchor, std::span<const RdPoint> test) {
  if (anchor.size() < 4 || test.size() < 4) return std::nan("");
  try {
    return bd_rate(anchor, test);
  } catch (const CodecError& e) {
    if (e.code() == ErrorCode::kNoOverlap) return std::nan("");
    throw;
  }
}

void write_xi_csv(std::ostream& os, std::span<const std::string> labels,
                  std::span<const double> lambdas, std::span<const XiStats> stats) {
  os << "label,lambda,xi_p_min,xi_p_max,xi_p_mean,xi_p_var,xi_u_min,xi_u_max,xi_u_mean,xi_u_var,"
        "xi_u_zero_fraction\n";
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const XiStats& s = stats[i];
    os << labels[i] << ',' << lambdas[i] << ',' << s.p_min << ',' << s.p_max << ',' << s.p_mean
       << ',' << s.p_var << ',' << s.u_min << ',' << s.u_max << ',' << s.u_mean << ',' << s.u_var
       << ',' << s.u_zero_fraction << '\n';
  }
}

}  // namespace

EncoderConfig encoder_config(const RunConfig& cfg) {
  const bool rdo = cfg.lambda_index.has_value() || cfg.lambda.has_value();
  if (cfg.lambda_index && cfg.lambda) {
    throw CodecError(ErrorCode::kConfigConflict, "--lambda-index and --lambda are exclusive");
  }
  if (cfg.fixed_xi && rdo) {
    throw CodecError(ErrorCode::kConfigConflict, "--fixed-xi and lambda are exclusive");
  }
  if (cfg.mctf && (cfg.fixed_xi || rdo)) {
    throw CodecError(ErrorCode::kConfigConflict, "--mctf excludes --fixed-xi and lambda");
  }

  EncoderConfig e;
  e.filter.kind = cfg.denoiser;
  e.filter.gaussian_scale = cfg.gaussian_scale;
  e.xi_max = cfg.xi_max;
  e.search.block_size = cfg.block_size;
  e.search.range = cfg.search_range;
  if (cfg.mctf) {
    e.mode = EncodeMode::kMctf;
  } else if (cfg.fixed_xi) {
    e.mode = EncodeMode::kFixedXi;
    e.fixed_xi = *cfg.fixed_xi;
  } else if (cfg.lambda) {
    e.mode = EncodeMode::kRdoLambda;
    e.lambda = *cfg.lambda;
  } else {
    e.mode = EncodeMode::kRdoSchedule;
    e.lambda_index = cfg.lambda_index.value_or(0);
    lambda_schedule(e.lambda_index);  // range check
  }
  return e;
}

XiStats xi_stats(std::span<const LiftingPair> pairs) {
  XiStats s;
  s.pairs = static_cast<int>(pairs.size());
  if (pairs.empty()) return s;
  s.p_min = s.p_max = pairs[0].xi_p;
  s.u_min = s.u_max = pairs[0].xi_u;
  int u_zero = 0;
  for (const LiftingPair& p : pairs) {
    s.p_min = std::min(s.p_min, p.xi_p);
    s.p_max = std::max(s.p_max, p.xi_p);
    s.u_min = std::min(s.u_min, p.xi_u);
    s.u_max = std::max(s.u_max, p.xi_u);
    s.p_mean += p.xi_p;
    s.u_mean += p.xi_u;
    u_zero += p.xi_u == 0;
  }
  const double n = static_cast<double>(pairs.size());
  s.p_mean /= n;
  s.u_mean /= n;
  for (const LiftingPair& p : pairs) {
    s.p_var += (p.xi_p - s.p_mean) * (p.xi_p - s.p_mean);
    s.u_var += (p.xi_u - s.u_mean) * (p.xi_u - s.u_mean);
  }
  s.p_var /= n;
  s.u_var /= n;
  s.u_zero_fraction = u_zero / n;
  return s;
}

RdPoint rd_point(const Sequence& source, const EncodeResult& result, std::string label) {
  const SplitSequence parts = split(source);
  const std::vector<Frame> lp = lowpass_frames(result.pairs);
  RdPoint p;
  p.rate = static_cast<double>(result.stream.size());
  p.psnr_lp = psnr_lp(lp, parts.odd.frames(), parts.even.frames());
  p.ssim_lp = ssim_lp(lp, parts.odd.frames(), parts.even.frames());
  p.label = std::move(label);
  return p;
}

SweepResult run_sweep(const Sequence& seq, const SweepOptions& options) {
  if (options.xi_stride < 1) throw CodecError(ErrorCode::kInvalidArgument, "xi stride must be >= 1");

  struct Job {
    EncoderConfig cfg;
    std::string label;
  };
  std::vector<Job> jobs;
  EncoderConfig base;
  base.filter = options.filter;
  base.xi_max = options.xi_max;
  base.search = options.search;

  base.mode = EncodeMode::kMctf;
  jobs.push_back({base, "mctf"});
  SweepResult out;
  for (int xi = 1; xi <= std::min(100, options.xi_max); xi += options.xi_stride) {
    base.mode = EncodeMode::kFixedXi;
    base.fixed_xi = xi;
    jobs.push_back({base, "ref xi=" + std::to_string(xi)});
    out.ref_xi.push_back(xi);
  }
  base.fixed_xi = 0;
  for (int n = 0; n < kLambdaCount; ++n) {
    base.mode = EncodeMode::kRdoSchedule;
    base.lambda_index = n;
    jobs.push_back({base, "rdo lambda" + std::to_string(n)});
  }

  std::vector<RdPoint> points(jobs.size());
  std::vector<XiStats> stats(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const EncodeResult r = encode_sequence(seq, jobs[i].cfg);
    points[i] = rd_point(seq, r, jobs[i].label);
    stats[i] = xi_stats(r.pairs);
  });

  out.mctf = points[0];
  const std::size_t ref_end = 1 + out.ref_xi.size();
  out.ref.assign(points.begin() + 1, points.begin() + static_cast<std::ptrdiff_t>(ref_end));
  out.rdo.assign(points.begin() + static_cast<std::ptrdiff_t>(ref_end), points.end());
  out.rdo_xi.assign(stats.begin() + static_cast<std::ptrdiff_t>(ref_end), stats.end());
  out.bd_hq = bd_or_nan(out.ref, std::span<const RdPoint>(out.rdo).subspan(0, 5));
  out.bd_lq = bd_or_nan(out.ref, std::span<const RdPoint>(out.rdo).subspan(4, 4));
  return out;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
  require_path(cfg.output, "--out");
  const Sequence seq = generate_phantom(cfg.phantom, cfg.seed);
  write_sequence(cfg.output, seq);
  const NoiseEstimate est = estimate_noise(seq[0]);
  out << "wrote " << cfg.output << ": " << seq.width() << "x" << seq.height() << "x"
      << seq.size() << ", seed " << cfg.seed << "\n"
      << "planted noise sigma " << cfg.phantom.noise_sigma << " (variance "
      << cfg.phantom.noise_sigma * cfg.phantom.noise_sigma << "), correlation radius "
      << cfg.phantom.noise_corr_radius << "\n"
      << "estimated noise variance on frame 0: " << est.sigma_sq << "\n";
  return 0;
}

int cmd_encode(const RunConfig& cfg, std::ostream& out) {
  require_path(cfg.input, "--in");
  require_path(cfg.output, "--out");
  const EncoderConfig ecfg = encoder_config(cfg);
  const Sequence seq = read_sequence(cfg.input);
  const EncodeResult r = encode_sequence(seq, ecfg);

  if (decode_sequence(r.stream) != seq) {
    throw CodecError(ErrorCode::kCorruptStream, "round-trip check failed");
  }
  write_file(cfg.output, r.stream);

  const std::string diag_path = cfg.output + ".costs.csv";
  std::ofstream diag = open_output(diag_path);
  diag << "pair,xi_p,xi_u,distortion,rate,cost,chosen\n";
  diag << std::setprecision(12);
  for (std::size_t t = 0; t < r.pairs.size(); ++t) {
    if (t < r.searches.size()) {
      const RingSearchResult& s = r.searches[t];
      for (const CostPoint& c : s.evaluated) {
        const bool chosen = c.xi_p == s.chosen.xi_p && c.xi_u == s.chosen.xi_u;
        diag << t << ',' << c.xi_p << ',' << c.xi_u << ',' << c.distortion << ',' << c.rate
             << ',' << c.cost << ',' << chosen << '\n';
      }
    } else {
      diag << t << ',' << r.pairs[t].xi_p << ',' << r.pairs[t].xi_u << ",,"
           << r.sizes.pair_rates[t] << ",,1\n";
    }
  }
  if (!diag) throw CodecError(ErrorCode::kIo, "failed writing " + diag_path);

  const RdPoint rd = rd_point(seq, r, encode_mode_name(ecfg.mode));
  out << "mode " << encode_mode_name(ecfg.mode) << ", denoiser "
      << denoiser_name(ecfg.filter.kind) << ", lambda " << r.header.lambda << "\n";
  print_sizes(out, r.sizes);
  out << "PSNR_LP: " << rd.psnr_lp << " dB\n"
      << "SSIM_LP: " << rd.ssim_lp << "\n";
  print_xi_stats(out, xi_stats(r.pairs));
  out << "wrote " << cfg.output << " and " << diag_path << "\n";
  return 0;
}

int cmd_decode(const RunConfig& cfg, std::ostream& out) {
  require_path(cfg.input, "--in");
  require_path(cfg.output, "--out");
  const Sequence seq = decode_sequence(read_file(cfg.input));
  write_sequence(cfg.output, seq);
  out << "wrote " << cfg.output << ": " << seq.width() << "x" << seq.height() << "x"
      << seq.size() << "\n";
  return 0;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  require_path(cfg.input, "--in");
  const ParsedStream parsed = parse_stream(read_file(cfg.input));
  const StreamHeader& h = parsed.header;
  out << "stream " << cfg.input << "\n"
      << "  " << h.width << "x" << h.height << "x" << h.frames << ", " << h.bitdepth
      << " bit\n"
      << "  mode " << encode_mode_name(h.mode) << ", denoiser " << denoiser_name(h.filter.kind)
      << ", lambda " << h.lambda << ", fixed xi " << h.fixed_xi << ", xi_max " << h.xi_max
      << "\n"
      << "  block " << h.block_size << ", search range " << h.search_range
      << ", spatial levels " << h.spatial_levels << "\n";
  print_sizes(out, parsed.sizes);
  print_xi_stats(out, xi_stats(parsed.pairs));
  out << "pair,xi_p,xi_u,rate\n";
  for (std::size_t t = 0; t < parsed.pairs.size(); ++t) {
    out << t << ',' << parsed.pairs[t].xi_p << ',' << parsed.pairs[t].xi_u << ','
        << parsed.sizes.pair_rates[t] << '\n';
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  require_path(cfg.output, "--out");
  if (cfg.fixed_xi || cfg.lambda || cfg.lambda_index || cfg.mctf) {
    throw CodecError(ErrorCode::kConfigConflict, "sweep sets the encoder mode itself");
  }
  const Sequence seq =
      cfg.input.empty() ? generate_phantom(cfg.phantom, cfg.seed) : read_sequence(cfg.input);

  SweepOptions opt;
  opt.filter.kind = cfg.denoiser;
  opt.filter.gaussian_scale = cfg.gaussian_scale;
  opt.xi_max = cfg.xi_max;
  opt.xi_stride = cfg.xi_stride;
  opt.search.block_size = cfg.block_size;
  opt.search.range = cfg.search_range;
  const SweepResult r = run_sweep(seq, opt);

  std::vector<RdPoint> all{r.mctf};
  all.insert(all.end(), r.ref.begin(), r.ref.end());
  all.insert(all.end(), r.rdo.begin(), r.rdo.end());
  const std::string rd_path = cfg.output + ".rd.csv";
  std::ofstream rd = open_output(rd_path);
  write_rd_csv(rd, all);

  std::vector<std::string> labels{r.mctf.label};
  std::vector<double> lambdas{0.0};
  std::vector<XiStats> stats{XiStats{}};
  stats[0].pairs = static_cast<int>(seq.size() / 2);
  stats[0].u_zero_fraction = 1.0;
  for (int n = 0; n < kLambdaCount; ++n) {
    labels.push_back(r.rdo[n].label);
    lambdas.push_back(lambda_schedule(n));
    stats.push_back(r.rdo_xi[n]);
  }
  const std::string xi_path = cfg.output + ".xi.csv";
  std::ofstream xi = open_output(xi_path);
  write_xi_csv(xi, labels, lambdas, stats);
  if (!rd || !xi) throw CodecError(ErrorCode::kIo, "failed writing sweep output");

  const auto best_ref = std::min_element(r.ref.begin(), r.ref.end(), [](auto& a, auto& b) {
    return a.rate < b.rate;
  });
  out << std::fixed << std::setprecision(3);
  out << "MCTF:            " << r.mctf.rate << " bytes, PSNR_LP " << r.mctf.psnr_lp << " dB\n";
  if (best_ref != r.ref.end()) {
    out << "smallest REF:    " << best_ref->rate << " bytes (" << best_ref->label << "), "
        << (1.0 - best_ref->rate / r.mctf.rate) * 100.0 << "% below MCTF\n";
  }
  for (const RdPoint& p : r.rdo) {
    out << p.label << ": " << p.rate << " bytes, PSNR_LP " << p.psnr_lp << " dB, SSIM_LP "
        << p.ssim_lp << "\n";
  }
  out << "BD-rate REF->RDO, HQ (lambda 0..4): " << r.bd_hq << "%\n"
      << "BD-rate REF->RDO, LQ (lambda 4..7): " << r.bd_lq << "%\n"
      << "wrote " << rd_path << " and " << xi_path << "\n";
  return 0;
}

int run(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::kEncode: return cmd_encode(cfg, out);
    case Command::kDecode: return cmd_decode(cfg, out);
    case Command::kSweep: return cmd_sweep(cfg, out);
    case Command::kSynth: return cmd_synth(cfg, out);
    case Command::kReport: return cmd_report(cfg, out);
  }
  return 1;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lossless 12-bit image sequence codec with denoised wavelet lifting"};
  RunConfig cfg;
  std::string mode = "encode";
  std::string denoiser = "gaussian";
  const std::map<std::string, Command> commands{{"encode", Command::kEncode},
                                                {"decode", Command::kDecode},
                                                {"sweep", Command::kSweep},
                                                {"synth", Command::kSynth},
                                                {"report", Command::kReport}};

  app.add_option("--mode", mode, "encode, decode, sweep, synth or report")
      ->check(CLI::IsMember({"encode", "decode", "sweep", "synth", "report"}));
  app.add_option("--in", cfg.input, "input file");
  app.add_option("--out", cfg.output, "output file (prefix for sweep)");
  app.add_option("--lambda-index", cfg.lambda_index, "lambda schedule index")
      ->check(CLI::Range(0, kLambdaCount - 1));
  app.add_option("--lambda", cfg.lambda, "explicit Lagrange multiplier")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--fixed-xi", cfg.fixed_xi, "use this noise parameter for every pair")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--mctf", cfg.mctf, "plain motion compensated lifting (xi = 0)");
  app.add_option("--denoiser", denoiser, "gaussian or nlm")
      ->check(CLI::IsMember({"gaussian", "nlm"}));
  app.add_option("--gaussian-scale", cfg.gaussian_scale, "Gaussian kernel scale K")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "phantom seed");
  app.add_option("--xi-max", cfg.xi_max, "largest noise parameter")->check(CLI::Range(0, 65535));
  app.add_option("--block-size", cfg.block_size, "motion block size")->check(CLI::Range(1, 255));
  app.add_option("--search-range", cfg.search_range, "motion search range")
      ->check(CLI::Range(0, 127));
  app.add_option("--xi-stride", cfg.xi_stride, "fixed-xi step in sweeps")
      ->check(CLI::PositiveNumber);
  app.add_option("--width", cfg.phantom.width, "phantom width")->check(CLI::Range(1, 65535));
  app.add_option("--height", cfg.phantom.height, "phantom height")->check(CLI::Range(1, 65535));
  app.add_option("--frames", cfg.phantom.frames, "phantom frame count")
      ->check(CLI::Range(1, 65535));
  app.add_option("--sigma", cfg.phantom.noise_sigma, "phantom noise sigma")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--corr-radius", cfg.phantom.noise_corr_radius, "noise correlation radius")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  cfg.command = commands.at(mode);
  cfg.denoiser = denoiser == "nlm" ? DenoiserKind::kNonLocalMeans : DenoiserKind::kGaussian;

  try {
    return run(cfg, out);
  } catch (const CodecError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace liftcodec::cli
