#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "rchroma/grid.hpp"
#include "rchroma/model.hpp"
#include "rchroma/schedule.hpp"

namespace rchroma {

// |FFT(g)|^2 / N^2 per frequency bin, as a grid in FFT index order. Single channel.
Grid psd2d(const Grid& g);

struct RadialPSD {
  std::vector<double> frequency;  // bin radius, 0, 1, 2, ...
  std::vector<double> power;      // mean power of the bins at that radius
  std::vector<int> counts;        // number of FFT bins per radius
  int n_samples = 1;

  // Power-weighted mean radius.
  double centroid() const;
};

// Bins by round(|f|) with f in signed frequency-index units; DC is bin 0.
RadialPSD radial_average(const Grid& powers);

// Radial average of the mean PSD over several fields.
RadialPSD mean_radial_psd(const std::vector<Grid>& fields);

struct PsdFrame {
  double t;        // the later (less noisy) time of the pair
  double t_prev;   // the earlier (noisier) time
  RadialPSD psd;
};

// DDIM with the model's Wiener denoiser; for every pair of consecutive
// evaluations the change in E[x0 | x_t] is transformed and radially averaged,
// then averaged over n_samples trajectories (stream i for trajectory i).
// Frames are ordered as sampled: from t_max towards t_min.
std::vector<PsdFrame> change_psd_trajectory(const GaussianImageModel& model, const NoiseSchedule& s,
                                            int steps, int n_samples, std::uint64_t seed);

// How the change spectrum moves over a trajectory. Frames are taken in
// sampling order (t decreasing). Low band: radius <= side/8; high band:
// radius > side/4. First/last: mean over the first and last third of frames.
struct CoarseToFineSummary {
  std::vector<double> centroids;
  // Fraction of consecutive frame pairs whose centroid does not decrease as t decreases.
  double monotone_fraction = 0.0;
  double low_first = 0.0;
  double low_last = 0.0;
  double high_first = 0.0;
  double high_last = 0.0;
};

CoarseToFineSummary summarize_coarse_to_fine(const std::vector<PsdFrame>& frames, int side);

// CSV `t,r,power`, long form.
void write_psd_trajectory_csv(const std::filesystem::path& path, const std::vector<PsdFrame>& frames);

}  // namespace rchroma
