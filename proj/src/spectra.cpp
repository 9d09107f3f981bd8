#include "rchroma/spectra.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

#include "rchroma/diffusion.hpp"
#include "rchroma/errors.hpp"
#include "rchroma/fft.hpp"
#include "rchroma/parallel.hpp"

namespace rchroma {

Grid psd2d(const Grid& g) {
  const Spectrum f = fft2(g);
  const double scale = 1.0 / (static_cast<double>(g.side()) * g.side());
  Grid out(g.side());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::norm(f[i]) * scale;
  return out;
}

double RadialPSD::centroid() const {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < power.size(); ++i) {
    num += frequency[i] * power[i];
    den += power[i];
  }
  return den > 0.0 ? num / den : 0.0;
}

RadialPSD radial_average(const Grid& powers) {
  const int n = powers.side();
  if (powers.channels() != 1) throw SizeError("radial_average: expects a single-channel grid");
  const int bins = static_cast<int>(std::lround(std::sqrt(2.0) * (n / 2))) + 1;
  RadialPSD out;
  out.frequency.resize(static_cast<std::size_t>(bins));
  out.power.assign(static_cast<std::size_t>(bins), 0.0);
  out.counts.assign(static_cast<std::size_t>(bins), 0);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const auto b = static_cast<std::size_t>(std::lround(std::sqrt(frequency_squared(r, c, n))));
      out.power[b] += powers.at(r, c);
      ++out.counts[b];
    }
  }
  // Drop radii no bin rounds to, so frequencies stay strictly increasing with
  // non-empty bins.
  RadialPSD packed;
  packed.n_samples = 1;
  for (int b = 0; b < bins; ++b) {
    const auto i = static_cast<std::size_t>(b);
    if (out.counts[i] == 0) continue;
    packed.frequency.push_back(b);
    packed.power.push_back(out.power[i] / out.counts[i]);
    packed.counts.push_back(out.counts[i]);
  }
  return packed;
}

RadialPSD mean_radial_psd(const std::vector<Grid>& fields) {
  if (fields.empty()) throw ArgumentError("mean_radial_psd: no fields");
  Grid total(fields.front().side());
  for (const Grid& g : fields) total += psd2d(g);
  total *= 1.0 / static_cast<double>(fields.size());
  RadialPSD out = radial_average(total);
  out.n_samples = static_cast<int>(fields.size());
  return out;
}

std::vector<PsdFrame> change_psd_trajectory(const GaussianImageModel& model, const NoiseSchedule& s,
                                            int steps, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw ArgumentError("change_psd_trajectory: n_samples must be >= 1");
  if (steps < 2) throw ArgumentError("change_psd_trajectory: needs at least two steps");
  const int n = model.side();
  const auto times = sampling_times(s, steps);
  const Denoiser d = wiener_denoiser(model, s);
  const auto frames = static_cast<std::size_t>(steps - 1);

  // Per-sample PSD sums, reduced afterwards in sample order.
  std::vector<std::vector<Grid>> per_sample(static_cast<std::size_t>(n_samples));
  parallel_for(static_cast<std::size_t>(n_samples), [&](std::size_t i) {
    RngStream rng(seed, i);
    std::vector<Grid>& out = per_sample[i];
    out.reserve(frames);
    Grid previous;
    SampleOptions opts;
    opts.observer = [&](int, double t, const Grid& x, const Grid& eps) {
      Grid x0 = posterior_expectation(x, eps, s.alpha(t));
      if (previous.size() != 0) out.push_back(psd2d(x0 - previous));
      previous = std::move(x0);
    };
    ddim_sample(d, s, rng.normal_grid(n), steps, opts);
  });

  std::vector<PsdFrame> result;
  result.reserve(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    Grid total(n);
    for (const auto& sample : per_sample) total += sample[f];
    total *= 1.0 / n_samples;
    // Frame f compares the evaluations at step steps-f and steps-f-1.
    PsdFrame frame{times[static_cast<std::size_t>(steps) - f - 1], times[static_cast<std::size_t>(steps) - f],
                   radial_average(total)};
    frame.psd.n_samples = n_samples;
    result.push_back(std::move(frame));
  }
  return result;
}

CoarseToFineSummary summarize_coarse_to_fine(const std::vector<PsdFrame>& frames, int side) {
  if (frames.size() < 3) throw ArgumentError("summarize_coarse_to_fine: needs at least three frames");
  CoarseToFineSummary out;
  std::vector<double> low;
  std::vector<double> high;
  for (const auto& f : frames) {
    out.centroids.push_back(f.psd.centroid());
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t i = 0; i < f.psd.power.size(); ++i) {
      const double r = f.psd.frequency[i];
      if (r <= side / 8.0) lo += f.psd.power[i] * f.psd.counts[i];
      if (r > side / 4.0) hi += f.psd.power[i] * f.psd.counts[i];
    }
    low.push_back(lo);
    high.push_back(hi);
  }
  std::size_t monotone = 0;
  for (std::size_t i = 1; i < out.centroids.size(); ++i) {
    if (out.centroids[i] >= out.centroids[i - 1]) ++monotone;
  }
  out.monotone_fraction = static_cast<double>(monotone) / static_cast<double>(out.centroids.size() - 1);
  const std::size_t third = frames.size() / 3;
  auto avg = [](const std::vector<double>& v, std::size_t from, std::size_t to) {
    double sum = 0.0;
    for (std::size_t i = from; i < to; ++i) sum += v[i];
    return sum / static_cast<double>(to - from);
  };
  out.low_first = avg(low, 0, third);
  out.low_last = avg(low, frames.size() - third, frames.size());
  out.high_first = avg(high, 0, third);
  out.high_last = avg(high, frames.size() - third, frames.size());
  return out;
}

void write_psd_trajectory_csv(const std::filesystem::path& path, const std::vector<PsdFrame>& frames) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "t,r,power\n" << std::setprecision(17);
  for (const auto& f : frames) {
    for (std::size_t i = 0; i < f.psd.power.size(); ++i) {
      out << f.t << ',' << f.psd.frequency[i] << ',' << f.psd.power[i] << '\n';
    }
  }
}

}  // namespace rchroma
