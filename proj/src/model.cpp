#include "rchroma/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rchroma/chroma.hpp"
#include "rchroma/errors.hpp"
#include "rchroma/fft.hpp"
#include "rchroma/pyramid.hpp"

namespace rchroma {
namespace {

// Squared response of a length-b box average at angular frequency theta.
double box_response_sq(int b, double theta) {
  const double s = std::sin(theta / 2.0);
  if (std::abs(s) < 1e-300) return 1.0;
  const double r = std::sin(b * theta / 2.0) / (b * s);
  return r * r;
}

}  // namespace

double band_dimension_fraction(int side, int l) {
  const int top = max_levels(side) - 1;
  if (l < 0 || l > top) throw ArgumentError("band index out of range");
  if (l == top) return 1.0 / (static_cast<double>(side) * side);
  return std::ldexp(1.0, -2 * l) - std::ldexp(1.0, -2 * (l + 1));
}

Grid band_psd_response(int side, int l) {
  const int top = max_levels(side) - 1;
  if (l < 0 || l > top) throw ArgumentError("band index out of range");
  Grid out(side);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const double ty = 2.0 * std::numbers::pi * r / side;
      const double tx = 2.0 * std::numbers::pi * c / side;
      auto h = [&](int level) {
        if (level > top) return 0.0;
        const int b = 1 << level;
        return box_response_sq(b, ty) * box_response_sq(b, tx);
      };
      out.at(r, c) = h(l) - h(l + 1);
    }
  }
  return out;
}

GaussianImageModel GaussianImageModel::spectral(int side, std::vector<double> spectrum) {
  if (!is_power_of_two(side)) throw SizeError("model side must be a power of two");
  if (spectrum.size() != static_cast<std::size_t>(side) * side) {
    throw SizeError("spectrum must have side*side entries");
  }
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const double v = spectrum[static_cast<std::size_t>(r) * side + c];
      if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("spectrum values must be finite and >= 0");
      const int rr = (side - r) % side;
      const int cc = (side - c) % side;
      if (v != spectrum[static_cast<std::size_t>(rr) * side + cc]) {
        throw DomainError("spectrum must satisfy S(f) == S(-f)");
      }
    }
  }
  GaussianImageModel m(Kind::spectral, side);
  m.spectrum_ = std::move(spectrum);
  return m;
}

GaussianImageModel GaussianImageModel::power_law(int side, double f0, double pixel_variance) {
  if (!(f0 > 0.0) || !(pixel_variance > 0.0)) {
    throw ArgumentError("power_law: f0 and pixel variance must be positive");
  }
  if (!is_power_of_two(side)) throw SizeError("model side must be a power of two");
  std::vector<double> s(static_cast<std::size_t>(side) * side);
  double total = 0.0;
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const double v = 1.0 / (frequency_squared(r, c, side) + f0 * f0);
      s[static_cast<std::size_t>(r) * side + c] = v;
      total += v;
    }
  }
  const double scale = pixel_variance * side * side / total;
  for (double& v : s) v *= scale;
  return spectral(side, std::move(s));
}

GaussianImageModel GaussianImageModel::band_separable(int side, std::vector<double> band_variances) {
  const int levels = max_levels(side);
  if (band_variances.size() != static_cast<std::size_t>(levels)) {
    throw SizeError("band model for side " + std::to_string(side) + " needs " + std::to_string(levels) +
                    " band variances");
  }
  for (double v : band_variances) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("band variances must be finite and >= 0");
  }
  GaussianImageModel m(Kind::band, side);
  m.bands_ = std::move(band_variances);
  return m;
}

GaussianImageModel GaussianImageModel::band_power_law(int side, double pixel_variance, double ratio) {
  if (!(pixel_variance > 0.0) || !(ratio > 0.0)) {
    throw ArgumentError("band_power_law: pixel variance and ratio must be positive");
  }
  const int levels = max_levels(side);
  std::vector<double> c(static_cast<std::size_t>(levels));
  double var = 0.0;
  for (int l = 0; l < levels; ++l) {
    c[static_cast<std::size_t>(l)] = std::pow(ratio, l);
    var += c[static_cast<std::size_t>(l)] * band_dimension_fraction(side, l);
  }
  for (double& v : c) v *= pixel_variance / var;
  return band_separable(side, std::move(c));
}

GaussianImageModel GaussianImageModel::with_mean(Grid mean) const {
  if (mean.side() != side_ || mean.channels() != 1) throw SizeError("model mean has the wrong shape");
  GaussianImageModel m = *this;
  m.mean_ = std::move(mean);
  return m;
}

void GaussianImageModel::check_input(const Grid& x) const {
  if (x.side() != side_ || x.channels() != 1) {
    throw SizeError("model of side " + std::to_string(side_) + " got a grid of side " +
                    std::to_string(x.side()) + " with " + std::to_string(x.channels()) + " channels");
  }
}

template <class Gain>
Grid GaussianImageModel::filter(const Grid& x, Gain gain) const {
  if (kind_ == Kind::spectral) {
    Spectrum f = fft2(x);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] *= gain(spectrum_[i]);
    return ifft2_real(std::move(f), side_);
  }
  const BandStack stack = band_decompose(x, static_cast<int>(bands_.size()));
  Grid out(side_);
  for (std::size_t l = 0; l < bands_.size(); ++l) out.axpy(gain(bands_[l]), stack.bands[l]);
  return out;
}

Grid GaussianImageModel::color(const Grid& white) const {
  check_input(white);
  Grid out = filter(white, [](double s) { return std::sqrt(s); });
  if (mean_) out += *mean_;
  return out;
}

Grid GaussianImageModel::posterior_mean(const Grid& x, double alpha) const {
  return posterior_mean(x, alpha, 1.0 - alpha);
}

Grid GaussianImageModel::posterior_mean(const Grid& x, double alpha, double one_minus_alpha) const {
  check_input(x);
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("posterior_mean: alpha must lie in (0, 1]");
  const double ra = std::sqrt(alpha);
  Grid centered = x;
  if (mean_) centered.axpy(-ra, *mean_);
  Grid out = filter(centered, [&](double s) { return ra * s / (alpha * s + one_minus_alpha); });
  if (mean_) out += *mean_;
  return out;
}

Grid GaussianImageModel::noise_prediction(const Grid& x, double alpha) const {
  return noise_prediction(x, alpha, 1.0 - alpha);
}

Grid GaussianImageModel::noise_prediction(const Grid& x, double alpha, double one_minus_alpha) const {
  check_input(x);
  if (!(alpha >= 0.0 && alpha < 1.0 && one_minus_alpha > 0.0)) {
    throw DomainError("noise_prediction: alpha must lie in [0, 1)");
  }
  Grid centered = x;
  if (mean_) centered.axpy(-std::sqrt(alpha), *mean_);
  // (x - sqrt(a) x0_hat) / sqrt(1 - a) written per bin, without the cancellation.
  const double rb = std::sqrt(one_minus_alpha);
  return filter(centered, [&](double s) { return rb / (alpha * s + one_minus_alpha); });
}

GaussianImageModel GaussianImageModel::downsampled(int m) const {
  if (kind_ != Kind::band) throw ArgumentError("only band-separable models downsample exactly");
  const int levels = static_cast<int>(bands_.size());
  if (m < 0 || m >= levels) throw ArgumentError("downsampled: level out of range");
  if (mean_) throw ArgumentError("downsampled: mean-shifted band models are not supported");
  std::vector<double> c(bands_.begin() + m, bands_.end());
  const double scale = std::ldexp(1.0, -2 * m);
  for (double& v : c) v *= scale;
  return band_separable(side_ >> m, std::move(c));
}

Grid GaussianImageModel::expected_psd() const {
  if (kind_ == Kind::spectral) return Grid(side_, 1, spectrum_);
  Grid out(side_);
  for (std::size_t l = 0; l < bands_.size(); ++l) {
    out.axpy(bands_[l], band_psd_response(side_, static_cast<int>(l)));
  }
  return out;
}

double GaussianImageModel::pixel_variance() const {
  if (kind_ == Kind::spectral) {
    double total = 0.0;
    for (double v : spectrum_) total += v;
    return total / (static_cast<double>(side_) * side_);
  }
  double var = 0.0;
  for (std::size_t l = 0; l < bands_.size(); ++l) {
    var += bands_[l] * band_dimension_fraction(side_, static_cast<int>(l));
  }
  return var;
}

}  // namespace rchroma
