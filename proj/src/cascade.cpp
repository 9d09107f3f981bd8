#include "rchroma/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rchroma/chroma.hpp"
#include "rchroma/errors.hpp"
#include "rchroma/parallel.hpp"
#include "rchroma/pyramid.hpp"
#include "rchroma/rng.hpp"

namespace rchroma {
namespace {

void clamp_unit(Grid& g) {
  for (double& v : g.data()) v = std::clamp(v, -1.0, 1.0);
}

void check_bank(const ResolutionDenoiserBank& bank, const Grid& x) {
  if (bank.levels.empty()) throw ArgumentError("denoiser bank is empty");
  if (x.side() != bank.side) {
    throw SizeError("bank built for side " + std::to_string(bank.side) + " got side " +
                    std::to_string(x.side()));
  }
  if (bank.size() > max_levels(bank.side)) {
    throw SizeError("bank has more levels than the grid has resolutions");
  }
}

}  // namespace

Grid residual_target(const Grid& eps) { return eps - project(eps, 1); }

ResolutionDenoiserBank wiener_bank(const GaussianImageModel& model, const NoiseSchedule& s, int levels) {
  if (levels < 1 || levels > max_levels(model.side())) {
    throw ArgumentError("wiener_bank: levels must lie in [1, log2(side) + 1]");
  }
  ResolutionDenoiserBank bank;
  bank.side = model.side();
  bank.schedule = s;
  for (int m = 0; m < levels; ++m) {
    const GaussianImageModel level = model.downsampled(m);
    Denoiser d = wiener_denoiser(level, s, "wiener@" + std::to_string(m));
    if (m + 1 < levels) {
      d = Denoiser{"residual(" + d.name + ")",
                   [inner = d.predict](const Grid& x, double t) { return residual_target(inner(x, t)); }};
    }
    bank.levels.push_back(std::move(d));
  }
  return bank;
}

LevelInput level_input(const NoiseSchedule& s, double t, int m, const CascadeOptions& opts) {
  const double tau = opts.time_adjust ? time_adjust(s, t, m) : t;
  const double scale = opts.intensity_rescale ? intensity_scale(s.alpha(t), m) : 1.0;
  return {tau, scale};
}

Grid combine_two(const Denoiser& low, const Denoiser& res, const Grid& x_t, double t,
                 const NoiseSchedule& s, const CascadeOptions& opts) {
  const LevelInput in = level_input(s, t, 1, opts);
  Grid coarse = downsample(x_t);
  coarse *= in.scale;
  const Grid low_eps = low(coarse, in.tau);
  if (low_eps.side() != coarse.side()) throw SizeError("combine_two: low-resolution output has the wrong side");
  Grid out = res(x_t, t);
  require_same_shape(out, x_t, "combine_two");
  out.axpy(0.5, upsample(low_eps));
  return out;
}

Grid combine_multi(const ResolutionDenoiserBank& bank, const Grid& x_t, double t, const CascadeOptions& opts,
                   bool parallel) {
  check_bank(bank, x_t);
  const int levels = bank.size();
  std::vector<Grid> parts(static_cast<std::size_t>(levels));
  auto level = [&](std::size_t i) {
    const int m = static_cast<int>(i);
    if (m == 0) {
      parts[i] = bank.levels[0](x_t, t);
      return;
    }
    const LevelInput in = level_input(bank.schedule, t, m, opts);
    Grid coarse = downsample(x_t, m);
    coarse *= in.scale;
    Grid eps = bank.levels[i](coarse, in.tau);
    if (eps.side() != coarse.side()) {
      throw SizeError("level " + std::to_string(m) + " output has the wrong side");
    }
    eps *= std::ldexp(1.0, -m);
    parts[i] = upsample(eps, m);
  };
  if (parallel) {
    parallel_for(parts.size(), level);
  } else {
    for (std::size_t i = 0; i < parts.size(); ++i) level(i);
  }
  // Fixed summation order, coarse to fine. For two levels this matches
  // combine_two's res + 0.5 U[low] term for term.
  Grid out = std::move(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) out += parts[i];
  return out;
}

Denoiser cascade_denoiser(const ResolutionDenoiserBank& bank, const CascadeOptions& opts) {
  return Denoiser{"cascade(" + std::to_string(bank.size()) + ")",
                  [bank, opts](const Grid& x, double t) { return combine_multi(bank, x, t, opts); }};
}

Grid level_posterior(const Grid& x_t, const Grid& eps, double alpha_t, int m) {
  require_same_shape(x_t, eps, "level_posterior");
  if (!(alpha_t > 0.0 && alpha_t < 1.0)) throw DomainError("level_posterior: alpha must lie in (0, 1)");
  const double a_tau = alpha_adjusted(alpha_t, m);
  const double lambda = intensity_scale(alpha_t, m);
  const double noise = std::ldexp(1.0, m) * std::sqrt(alpha_adjusted_complement(alpha_t, m));
  const double ra = std::sqrt(a_tau);
  Grid x = downsample(x_t, m);
  const Grid e = downsample(eps, m);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (lambda * x[i] - noise * e[i]) / ra;
  return x;
}

Grid multiresolution_threshold(const Grid& x_t, const Grid& eps, double alpha_t, int top_level) {
  require_same_shape(x_t, eps, "multiresolution_threshold");
  const int top = max_levels(x_t.side()) - 1;
  if (top_level < 0 || top_level > top) {
    throw ArgumentError("multiresolution_threshold: top level must lie in [0, " + std::to_string(top) + "]");
  }
  Grid x0 = upsample(level_posterior(x_t, eps, alpha_t, top_level), top_level);
  clamp_unit(x0);
  for (int m = top_level - 1; m >= 0; --m) {
    const Grid p = level_posterior(x_t, eps, alpha_t, m);
    x0 += upsample(residual_target(p), m);
    clamp_unit(x0);
  }
  return x0;
}

Grid cascaded_sample(const ResolutionDenoiserBank& bank, Grid x_T, int steps, bool threshold,
                     const CascadeOptions& opts) {
  check_bank(bank, x_T);
  const NoiseSchedule& s = bank.schedule;
  const auto times = sampling_times(s, steps);
  const int top = bank.size() - 1;
  Grid x = std::move(x_T);
  for (int k = steps; k >= 1; --k) {
    const double t = times[static_cast<std::size_t>(k)];
    const double a = s.alpha(t);
    const double b = s.one_minus_alpha(t);
    const double ap = s.alpha(times[static_cast<std::size_t>(k - 1)]);
    Grid eps = combine_multi(bank, x, t, opts);
    if (!threshold) {
      x = ddim_update(x, eps, a, ap);
      continue;
    }
    const Grid x0 = multiresolution_threshold(x, eps, a, top);
    const double ra = std::sqrt(a);
    const double rb = std::sqrt(b);
    const double rap = std::sqrt(ap);
    const double rbp = std::sqrt(1.0 - ap);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = (x[i] - ra * x0[i]) / rb;
      x[i] = rap * x0[i] + rbp * e;
    }
  }
  return x;
}

Grid cascaded_sample(const ResolutionDenoiserBank& bank, int steps, std::uint64_t seed, bool threshold,
                     const CascadeOptions& opts, std::uint64_t stream) {
  RngStream rng(seed, stream);
  return cascaded_sample(bank, rng.normal_grid(bank.side), steps, threshold, opts);
}

}  // namespace rchroma
