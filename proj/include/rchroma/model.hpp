#pragma once

#include <optional>
#include <vector>

#include "rchroma/grid.hpp"
#include "rchroma/rng.hpp"

namespace rchroma {

// Zero-mean (optionally mean-shifted) Gaussian prior over single-channel
// images, with an exactly computable posterior mean.
//
// spectral: stationary, covariance diagonal in Fourier space with per-bin power
//   S(f) (PSD convention |FFT|^2 / N^2, so the pixel variance is sum(S) / N^2).
// band: covariance sum_l c_l P_l over the Haar-style bands
//   P_l = U^l D^l - U^{l+1} D^{l+1}, l = 0..log2(side) (the last one is the mean).
//   Equivalent to x = sum_l U^l z_l with independent block-residual fields z_l.
class GaussianImageModel {
 public:
  enum class Kind { spectral, band };

  // spectrum has side*side non-negative entries with S(f) == S(-f).
  static GaussianImageModel spectral(int side, std::vector<double> spectrum);
  // S(f) proportional to 1 / (|f|^2 + f0^2), scaled to the given pixel variance.
  static GaussianImageModel power_law(int side, double f0 = 1.0, double pixel_variance = 1.0);
  // One variance per band, log2(side) + 1 entries, finest first.
  static GaussianImageModel band_separable(int side, std::vector<double> band_variances);
  // c_l = c_0 * ratio^l scaled to the given pixel variance. ratio = 4 gives a
  // 1/|f|^2-like spectrum whose statistics look the same at every level.
  static GaussianImageModel band_power_law(int side, double pixel_variance, double ratio = 4.0);

  GaussianImageModel with_mean(Grid mean) const;

  Kind kind() const noexcept { return kind_; }
  int side() const noexcept { return side_; }
  const std::vector<double>& spectrum() const noexcept { return spectrum_; }
  const std::vector<double>& band_variances() const noexcept { return bands_; }
  const std::optional<Grid>& mean() const noexcept { return mean_; }

  // C^{1/2} w + mean for a white-noise grid w.
  Grid color(const Grid& white) const;
  Grid sample(RngStream& rng) const { return color(rng.normal_grid(side_)); }

  // E[x0 | x_t] and the matching noise estimate for x_t = sqrt(a) x0 + sqrt(1-a) eps.
  // one_minus_alpha may be passed separately to keep precision near alpha = 1.
  Grid posterior_mean(const Grid& x, double alpha) const;
  Grid posterior_mean(const Grid& x, double alpha, double one_minus_alpha) const;
  Grid noise_prediction(const Grid& x, double alpha) const;
  Grid noise_prediction(const Grid& x, double alpha, double one_minus_alpha) const;

  // Model of D^m x0. Exact for band models: c'_j = c_{j+m} / 4^m. Throws for
  // spectral models, whose pooled statistics are no longer stationary.
  GaussianImageModel downsampled(int m) const;

  // Expected PSD of a sample (mean excluded), one value per FFT bin.
  Grid expected_psd() const;
  double pixel_variance() const;

 private:
  GaussianImageModel(Kind kind, int side) : kind_(kind), side_(side) {}
  void check_input(const Grid& x) const;
  // Applies gain(S or c_l) per Fourier bin or per band.
  template <class Gain>
  Grid filter(const Grid& x, Gain gain) const;

  Kind kind_;
  int side_;
  std::vector<double> spectrum_;
  std::vector<double> bands_;
  std::optional<Grid> mean_;
};

// Fraction of the N^2 dimensions spanned by band l of a side-N grid.
double band_dimension_fraction(int side, int l);

// Expected |FFT|^2 / N^2 of P_l applied to a unit Fourier mode, per bin, for
// band l: |H_l|^2 - |H_{l+1}|^2 with |H_l(f)|^2 the squared response of a
// 2^l x 2^l box average.
Grid band_psd_response(int side, int l);

}  // namespace rchroma
