#include "rchroma/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rchroma/errors.hpp"
#include "rchroma/fft.hpp"

namespace rchroma {
namespace {

void check_alpha(double a, const char* what) {
  if (!(a > 0.0 && a <= 1.0)) {
    std::ostringstream os;
    os << what << ": alpha must lie in (0, 1], got " << a;
    throw DomainError(os.str());
  }
}

}  // namespace

Grid forward(const Grid& x0, double t, const Grid& noise, const NoiseSchedule& s) {
  require_same_shape(x0, noise, "forward");
  const double ra = std::sqrt(s.alpha(t));
  const double rb = std::sqrt(s.one_minus_alpha(t));
  Grid out = x0;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ra * x0[i] + rb * noise[i];
  return out;
}

Grid forward_alpha(const Grid& x0, double alpha, const Grid& noise) {
  require_same_shape(x0, noise, "forward");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("forward: alpha must lie in [0, 1]");
  const double ra = std::sqrt(alpha);
  const double rb = std::sqrt(1.0 - alpha);
  Grid out = x0;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ra * x0[i] + rb * noise[i];
  return out;
}

Grid posterior_expectation(const Grid& x_t, const Grid& eps_pred, double alpha_t) {
  require_same_shape(x_t, eps_pred, "posterior_expectation");
  check_alpha(alpha_t, "posterior_expectation");
  const double ra = std::sqrt(alpha_t);
  const double rb = std::sqrt(1.0 - alpha_t);
  Grid out = x_t;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (x_t[i] - rb * eps_pred[i]) / ra;
  return out;
}

Grid ddim_update(const Grid& x_t, const Grid& eps, double alpha_t, double alpha_prev) {
  require_same_shape(x_t, eps, "ddim_update");
  check_alpha(alpha_t, "ddim_update");
  check_alpha(alpha_prev, "ddim_update");
  const double ratio = std::sqrt(alpha_t / alpha_prev);
  const double ce = std::sqrt(1.0 - alpha_prev) - std::sqrt(1.0 - alpha_t) / ratio;
  Grid out = x_t;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x_t[i] / ratio + ce * eps[i];
  return out;
}

Grid ddim_step(const Grid& x_t, double t, double t_prev, const Denoiser& d, const NoiseSchedule& s) {
  if (!(t_prev < t)) {
    std::ostringstream os;
    os << "ddim_step: t_prev=" << t_prev << " must be earlier than t=" << t;
    throw ArgumentError(os.str());
  }
  const double a = s.alpha(t);
  const double ap = s.alpha(t_prev);
  return ddim_update(x_t, d(x_t, t), a, ap);
}

std::vector<double> sampling_times(const NoiseSchedule& s, int steps) {
  if (steps < 1) throw ArgumentError("sampling needs at least one step");
  std::vector<double> out(static_cast<std::size_t>(steps) + 1);
  const double span = s.t_max() - s.t_min();
  for (int k = 0; k <= steps; ++k) out[static_cast<std::size_t>(k)] = s.t_min() + span * k / steps;
  out.back() = s.t_max();
  return out;
}

Grid sampler_update(const Grid& x, const Grid& eps, double alpha_t, double one_minus_alpha_t,
                    double alpha_prev, bool threshold) {
  if (!threshold) return ddim_update(x, eps, alpha_t, alpha_prev);
  Grid x0 = posterior_expectation(x, eps, alpha_t);
  for (double& v : x0.data()) v = std::clamp(v, -1.0, 1.0);
  const double ra = std::sqrt(alpha_t);
  const double rb = std::sqrt(one_minus_alpha_t);
  const double rap = std::sqrt(alpha_prev);
  const double rbp = std::sqrt(1.0 - alpha_prev);
  Grid out = x;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double e = (x[i] - ra * x0[i]) / rb;
    out[i] = rap * x0[i] + rbp * e;
  }
  return out;
}

Grid ddim_sample(const Denoiser& d, const NoiseSchedule& s, Grid x_T, int steps,
                 const SampleOptions& options) {
  const auto times = sampling_times(s, steps);
  Grid x = std::move(x_T);
  for (int k = steps; k >= 1; --k) {
    const double t = times[static_cast<std::size_t>(k)];
    const double t_prev = times[static_cast<std::size_t>(k - 1)];
    const Grid eps = d(x, t);
    if (options.observer) options.observer(k, t, x, eps);
    x = sampler_update(x, eps, s.alpha(t), s.one_minus_alpha(t), s.alpha(t_prev), options.static_threshold);
  }
  return x;
}

Denoiser wiener_denoiser(const GaussianImageModel& model, const NoiseSchedule& s, std::string name) {
  return Denoiser{std::move(name), [model, s](const Grid& x, double t) {
                    return model.noise_prediction(x, s.alpha(t), s.one_minus_alpha(t));
                  }};
}

Grid condition_mean(const GaussianImageModel& model, double amplitude, std::uint64_t seed) {
  const int n = model.side();
  RngStream rng(seed, 0);
  Spectrum phase = fft2(rng.normal_grid(n));
  const Grid s = model.expected_psd();
  for (std::size_t i = 0; i < phase.size(); ++i) {
    const double mag = std::abs(phase[i]);
    phase[i] = mag > 0.0 ? phase[i] / mag * (amplitude * n * s[i]) : 0.0;
  }
  return ifft2_real(std::move(phase), n);
}

ConditionWeights ConditionWeights::constant(std::vector<double> w) {
  ConditionWeights out;
  for (double v : w) out.weights.push_back([v](double) { return v; });
  return out;
}

double switch_time(double eta, const NoiseSchedule& s) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ArgumentError("eta must lie in [0, 1]");
  return s.t_min() + eta * (s.t_max() - s.t_min());
}

ConditionWeights ConditionWeights::heaviside_switch(double eta, const NoiseSchedule& s) {
  const double te = switch_time(eta, s);
  auto h = [te](double t) { return t - te > 0.0 ? 1.0 : 0.0; };
  ConditionWeights out;
  out.weights.push_back([h](double t) { return 1.0 - h(t); });
  out.weights.push_back(h);
  return out;
}

Grid compose_guidance(const Denoiser& uncond, const std::vector<Denoiser>& conds,
                      const ConditionWeights& weights, const Grid& x, double t) {
  if (weights.weights.size() != conds.size()) {
    throw ArgumentError("compose_guidance: " + std::to_string(weights.weights.size()) +
                        " weights for " + std::to_string(conds.size()) + " conditions");
  }
  std::vector<double> w(conds.size());
  double total = 0.0;
  for (std::size_t i = 0; i < conds.size(); ++i) {
    w[i] = weights.weights[i](t);
    if (!std::isfinite(w[i])) throw DomainError("compose_guidance: non-finite weight");
    total += w[i];
  }
  const double wu = 1.0 - total;
  Grid out;
  auto add = [&](double k, const Grid& e) {
    if (out.size() == 0) {
      out = e;
      if (k != 1.0) out *= k;
    } else {
      require_same_shape(out, e, "compose_guidance");
      out.axpy(k, e);
    }
  };
  if (wu != 0.0) add(wu, uncond(x, t));
  for (std::size_t i = 0; i < conds.size(); ++i) {
    if (w[i] != 0.0) add(w[i], conds[i](x, t));
  }
  if (out.size() == 0) out = Grid(x.side(), x.channels());
  return out;
}

Denoiser guided_denoiser(Denoiser uncond, std::vector<Denoiser> conds, ConditionWeights weights) {
  std::string name = "guided(" + uncond.name;
  for (const auto& c : conds) name += "," + c.name;
  name += ")";
  return Denoiser{std::move(name), [uncond = std::move(uncond), conds = std::move(conds),
                                    weights = std::move(weights)](const Grid& x, double t) {
                    return compose_guidance(uncond, conds, weights, x, t);
                  }};
}

Grid guidance_field(const Denoiser& uncond, const Denoiser& cond, const Grid& x, double t) {
  Grid c = cond(x, t);
  const Grid u = uncond(x, t);
  require_same_shape(c, u, "guidance_field");
  c -= u;
  return c;
}

}  // namespace rchroma
