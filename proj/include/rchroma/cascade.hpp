#pragma once

#include <cstdint>
#include <vector>

#include "rchroma/diffusion.hpp"
#include "rchroma/grid.hpp"
#include "rchroma/model.hpp"
#include "rchroma/schedule.hpp"

namespace rchroma {

// eps - U D eps: the part of a noise field a finer level is responsible for.
Grid residual_target(const Grid& eps);

// Ablation switches. Disabling time adjustment feeds tau_m := t; disabling
// intensity rescaling feeds lambda := 1.
struct CascadeOptions {
  bool time_adjust = true;
  bool intensity_rescale = true;
};

// Level m predicts noise for side/2^m grids. Every level but the last predicts
// a residual; the last (coarsest) predicts the full noise at its scale.
struct ResolutionDenoiserBank {
  int side = 0;
  std::vector<Denoiser> levels;
  NoiseSchedule schedule = NoiseSchedule::natural();

  int size() const noexcept { return static_cast<int>(levels.size()); }
};

// Bank of exact denoisers for a band-separable model: level m is the Wiener
// denoiser of model.downsampled(m), residualized for m < levels - 1.
ResolutionDenoiserBank wiener_bank(const GaussianImageModel& model, const NoiseSchedule& s, int levels);

// What the coarse level of a cascade sees at time t: the time and intensity
// used for level m under the given options.
struct LevelInput {
  double tau;
  double scale;
};
LevelInput level_input(const NoiseSchedule& s, double t, int m, const CascadeOptions& opts = {});

// 1/2 U[low(lambda D x_t, tau)] + res(x_t, t).
Grid combine_two(const Denoiser& low, const Denoiser& res, const Grid& x_t, double t,
                 const NoiseSchedule& s, const CascadeOptions& opts = {});

// sum_m 2^-m U^m[eps_m(lambda_m D^m x_t, tau_m)]. Levels are evaluated in
// parallel when `parallel` is set.
Grid combine_multi(const ResolutionDenoiserBank& bank, const Grid& x_t, double t,
                   const CascadeOptions& opts = {}, bool parallel = false);

// The bank folded into one full-resolution denoiser.
Denoiser cascade_denoiser(const ResolutionDenoiserBank& bank, const CascadeOptions& opts = {});

// Level-m estimate of D^m x0:
// (lambda_m D^m x_t - 2^m sqrt(1 - a_tau) D^m eps) / sqrt(a_tau), a_tau = alpha_adjusted(alpha_t, m).
Grid level_posterior(const Grid& x_t, const Grid& eps, double alpha_t, int m);

// Static threshold across resolutions. Starts from the clamped posterior of the
// coarsest level `top_level`, then for m = top_level-1 .. 0 adds the level's
// own detail U^m(x^(m) - U D x^(m)) and clamps to [-1, 1] again. Without
// clamping the sum telescopes to the plain posterior.
// top_level must not exceed log2(side).
Grid multiresolution_threshold(const Grid& x_t, const Grid& eps, double alpha_t, int top_level);

// DDIM with the composed bank. With threshold, every x0 estimate goes through
// multiresolution_threshold (top level = bank size - 1) and eps is re-derived.
Grid cascaded_sample(const ResolutionDenoiserBank& bank, Grid x_T, int steps, bool threshold,
                     const CascadeOptions& opts = {});
// Same, with x_T drawn from stream `stream` of `seed`.
Grid cascaded_sample(const ResolutionDenoiserBank& bank, int steps, std::uint64_t seed, bool threshold,
                     const CascadeOptions& opts = {}, std::uint64_t stream = 0);

}  // namespace rchroma
