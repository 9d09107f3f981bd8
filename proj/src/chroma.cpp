#include "rchroma/chroma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rchroma/errors.hpp"

namespace rchroma {
namespace {

void check_level(int m) {
  if (m < 0 || m > 60) {
    throw ArgumentError("resolution level must lie in [0, 60]");
  }
}

void check_levels(int levels) {
  if (levels < 1 || levels > 61) {
    throw ArgumentError("number of resolution levels must lie in [1, 61]");
  }
}

double four_pow(int m) { return std::ldexp(1.0, 2 * m); }

// Unnormalized natural-schedule weights written in terms of a = alpha = exp(-t*):
// 4^m e^{t*} / (e^{t*} + 4^m - 1)^2 = a * 4^m / ((4^m - 1) a + 1)^2. The common
// factor a is dropped; it cancels in the normalization.
void natural_weights(double a, int levels, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(levels));
  double total = 0.0;
  for (int m = 0; m < levels; ++m) {
    const double c = four_pow(m);
    const double d = (c - 1.0) * a + 1.0;
    out[static_cast<std::size_t>(m)] = c / (d * d);
    total += out[static_cast<std::size_t>(m)];
  }
  for (double& v : out) v /= total;
}

}  // namespace

int max_levels(int side) {
  if (side < 1 || (side & (side - 1)) != 0) {
    throw SizeError("side must be a positive power of two");
  }
  int levels = 1;
  while ((1 << (levels - 1)) < side) ++levels;
  return levels;
}

double time_adjust(const NoiseSchedule& s, double t, int m) {
  check_level(m);
  const double lambda = s.log_snr(t);
  if (m == 0) return t;
  const double target = std::min(lambda + 2.0 * m * std::numbers::ln2, NoiseSchedule::kMaxLogSnr);
  return s.time_for_log_snr(target);
}

double intensity_scale(double alpha_t, int m) {
  check_level(m);
  if (!(alpha_t > 0.0 && alpha_t <= 1.0)) {
    throw DomainError("intensity_scale: alpha must lie in (0, 1]");
  }
  return std::ldexp(1.0, m) / std::sqrt(1.0 + (four_pow(m) - 1.0) * alpha_t);
}

double alpha_adjusted(double alpha_t, int m) {
  check_level(m);
  if (!(alpha_t > 0.0 && alpha_t < 1.0)) {
    throw DomainError("alpha_adjusted: alpha must lie in (0, 1)");
  }
  const double c = four_pow(m);
  return c * alpha_t / ((c - 1.0) * alpha_t + 1.0);
}

double alpha_adjusted_complement(double alpha_t, int m) {
  check_level(m);
  if (!(alpha_t > 0.0 && alpha_t < 1.0)) {
    throw DomainError("alpha_adjusted_complement: alpha must lie in (0, 1)");
  }
  return (1.0 - alpha_t) / ((four_pow(m) - 1.0) * alpha_t + 1.0);
}

std::vector<double> natural_chromatography(double t_star, int levels) {
  check_levels(levels);
  if (!(t_star >= 0.0)) {
    throw DomainError("natural_chromatography: t* must be non-negative");
  }
  std::vector<double> out;
  natural_weights(std::exp(-t_star), levels, out);
  return out;
}

ChromatographyProfile chromatography(const NoiseSchedule& s, std::span<const double> times,
                                     int levels) {
  check_levels(levels);
  ChromatographyProfile profile(std::vector<double>(times.begin(), times.end()), levels);
  std::vector<double> column;
  for (std::size_t i = 0; i < times.size(); ++i) {
    // exp(-t*) is alpha itself; skip the log/exp round trip.
    natural_weights(s.alpha(times[i]), levels, column);
    for (int m = 0; m < levels; ++m) profile.value(m, i) = column[static_cast<std::size_t>(m)];
  }
  return profile;
}

ChromatographyProfile chromatography_numeric(const NoiseSchedule& s, std::span<const double> times,
                                             int levels, double h) {
  check_levels(levels);
  if (!(h > 0.0)) {
    throw ArgumentError("chromatography_numeric: step h must be positive");
  }
  ChromatographyProfile profile(std::vector<double>(times.begin(), times.end()), levels);
  std::vector<double> rates(static_cast<std::size_t>(levels));
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (t - h < s.t_min() || t + h > s.t_max()) {
      std::ostringstream os;
      os << "chromatography_numeric: t=" << t << " closer than h=" << h << " to the domain boundary";
      throw DomainError(os.str());
    }
    double total = 0.0;
    for (int m = 0; m < levels; ++m) {
      // d alpha / dt = -d(1 - alpha) / dt; differencing 1 - alpha keeps precision near alpha = 1.
      const double up = s.one_minus_alpha(time_adjust(s, t + h, m));
      const double down = s.one_minus_alpha(time_adjust(s, t - h, m));
      const double rate = (up - down) / (2.0 * h);
      rates[static_cast<std::size_t>(m)] = rate;
      total += rate;
    }
    for (int m = 0; m < levels; ++m) {
      profile.value(m, i) = total > 0.0 ? rates[static_cast<std::size_t>(m)] / total : 0.0;
    }
  }
  return profile;
}

double default_fd_step(const NoiseSchedule& s) { return 1e-4 * (s.t_max() - s.t_min()); }

}  // namespace rchroma
