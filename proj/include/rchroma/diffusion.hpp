#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rchroma/grid.hpp"
#include "rchroma/model.hpp"
#include "rchroma/schedule.hpp"

namespace rchroma {

// x_t bound to its time and schedule.
struct DiffusionState {
  Grid x;
  double t;
  const NoiseSchedule* schedule;
};

// Noise predictor eps(x_t, t). A conditional predictor is its own Denoiser
// bound to the condition's model. Must be safe to call concurrently.
struct Denoiser {
  std::string name;
  std::function<Grid(const Grid& x, double t)> predict;

  Grid operator()(const Grid& x, double t) const { return predict(x, t); }
};

// x_t = sqrt(a) x0 + sqrt(1 - a) noise.
Grid forward(const Grid& x0, double t, const Grid& noise, const NoiseSchedule& s);
Grid forward_alpha(const Grid& x0, double alpha, const Grid& noise);

// E[x0 | x_t] = (x_t - sqrt(1 - a) eps) / sqrt(a).
Grid posterior_expectation(const Grid& x_t, const Grid& eps_pred, double alpha_t);

// Deterministic DDIM update from alpha_t to alpha_prev given a noise estimate:
// x / sqrt(a_t / a_prev) + (sqrt(1 - a_prev) - sqrt(1 - a_t) / sqrt(a_t / a_prev)) eps.
Grid ddim_update(const Grid& x_t, const Grid& eps, double alpha_t, double alpha_prev);

// One DDIM step from t to t_prev < t with eps from the denoiser.
Grid ddim_step(const Grid& x_t, double t, double t_prev, const Denoiser& d, const NoiseSchedule& s);

// Step k of `steps` at t_min + k / steps * (t_max - t_min), k = 0..steps, ascending.
std::vector<double> sampling_times(const NoiseSchedule& s, int steps);

struct SampleOptions {
  // Clamp the x0 estimate to [-1, 1] at every step and re-derive eps from it.
  bool static_threshold = false;
  // Called before each update with the step index k (t = times[k]), x_t and
  // the noise estimate used for the update.
  std::function<void(int k, double t, const Grid& x, const Grid& eps)> observer;
};

// Runs DDIM from x_T at t_max down to t_min in `steps` uniform steps.
Grid ddim_sample(const Denoiser& d, const NoiseSchedule& s, Grid x_T, int steps,
                 const SampleOptions& options = {});

// One step with an optional static threshold; shared by the plain and cascaded samplers.
Grid sampler_update(const Grid& x, const Grid& eps, double alpha_t, double one_minus_alpha_t,
                    double alpha_prev, bool threshold);

// Exact posterior-mean denoiser of a Gaussian model.
Denoiser wiener_denoiser(const GaussianImageModel& model, const NoiseSchedule& s,
                         std::string name = "wiener");

// Deterministic condition mean: Fourier magnitude amplitude * N * S(f) with
// phases taken from a seeded white-noise field (conjugate-symmetric, so real).
Grid condition_mean(const GaussianImageModel& model, double amplitude, std::uint64_t seed);

using WeightFunction = std::function<double(double t)>;

// One weight function per conditional denoiser, in order.
struct ConditionWeights {
  std::vector<WeightFunction> weights;

  static ConditionWeights constant(std::vector<double> w);
  // w1 = 1 - H(t - t_eta), w2 = H(t - t_eta) with t_eta = t_min + eta (t_max - t_min)
  // and H(0) = 0: condition 2 drives early (noisy) steps, condition 1 the rest.
  static ConditionWeights heaviside_switch(double eta, const NoiseSchedule& s);
};

// Switching time t_min + eta (t_max - t_min).
double switch_time(double eta, const NoiseSchedule& s);

// eps_u + sum_i w_i(t) (eps_i - eps_u), evaluated as (1 - sum w) eps_u + sum w_i eps_i
// with zero-weight terms skipped, so one-hot weights reproduce a single
// predictor bitwise.
Grid compose_guidance(const Denoiser& uncond, const std::vector<Denoiser>& conds,
                      const ConditionWeights& weights, const Grid& x, double t);

Denoiser guided_denoiser(Denoiser uncond, std::vector<Denoiser> conds, ConditionWeights weights);

// eps(x, t; c) - eps(x, t).
Grid guidance_field(const Denoiser& uncond, const Denoiser& cond, const Grid& x, double t);

}  // namespace rchroma
