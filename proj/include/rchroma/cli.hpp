#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rchroma/cascade.hpp"
#include "rchroma/model.hpp"
#include "rchroma/profile.hpp"
#include "rchroma/pyramid.hpp"
#include "rchroma/schedule.hpp"
#include "rchroma/spectra.hpp"

namespace rchroma::cli {

enum ExitCode { kOk = 0, kRuntimeFailure = 1, kInvalidInput = 2 };

// Everything a command needs, after defaults have been resolved. Written to
// config.json in the output directory.
struct RunConfig {
  std::string command;
  std::string schedule = "cosine";
  std::string schedule_file;
  int side = 0;
  int levels = 0;
  int steps = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::filesystem::path out = "rchroma_out";
  int points = 256;
  bool verify = false;
  bool time_adjust = true;
  bool intensity_rescale = true;
  bool threshold = true;
  bool include_residual = false;
  bool identical_conditions = false;
  bool dump_grids = false;
  double amplitude = 1.0;
  double guidance = 1.0;
  double pixel_variance = 0.0625;
  std::vector<double> etas{0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 1.0};
};

// Fills command-specific defaults for zero fields and checks ranges.
// Throws ArgumentError on invalid input.
void resolve(RunConfig& cfg);
NoiseSchedule make_schedule(const RunConfig& cfg);

// Guided trajectory with mean-shifted Wiener condition models; the guidance
// field eps(x; c) - eps(x) is decomposed into bands at every step.
struct MeasureResult {
  MeasuredChromatography measured;
  ChromatographyProfile theory;  // same times and levels
  std::vector<int> measured_order;  // levels sorted by peak time, ties by level
  std::vector<int> theory_order;
  bool orders_match = false;
  bool any_degenerate = false;
};
MeasureResult measure_guidance(const RunConfig& cfg);

// Cascaded sampling under one set of switches, compared with exact model
// draws built from the same initial noise.
struct UpscaleVariant {
  std::string name;
  CascadeOptions options;
  bool threshold = true;
  RadialPSD sample_psd;
  RadialPSD reference_psd;
  std::vector<double> deviation;      // sample / reference - 1 per radius
  std::vector<double> raw_deviation;  // sample / model spectrum - 1 per radius
  double max_deviation = 0.0;
  double max_raw_deviation = 0.0;
  Grid first_sample;
};
struct UpscaleResult {
  RadialPSD model_psd;
  std::vector<UpscaleVariant> variants;
  bool trivial = false;          // one level: the cascade is plain DDIM
  double trivial_max_diff = 0.0;  // vs plain DDIM, first sample
};
// variant names: full, no-time-adjust, no-intensity-rescale, no-threshold.
UpscaleResult run_upscale(const RunConfig& cfg, const std::vector<std::string>& variants);

struct ComposeRun {
  double eta = 0.0;
  Grid sample;
  std::vector<double> diff_energy_eta0;  // per band ||band(sample - ref)||^2
  std::vector<double> diff_energy_eta1;
  std::vector<double> corr_eta0;  // per band correlation with the reference band
  std::vector<double> corr_eta1;
};
struct ComposeResult {
  Grid reference_eta0;  // condition 2 alone
  Grid reference_eta1;  // condition 1 alone
  std::vector<ComposeRun> runs;
  int levels = 0;
};
ComposeResult run_compose(const RunConfig& cfg);

// Parses arguments and runs one command. Returns the process exit code.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace rchroma::cli
