#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "rchroma/errors.hpp"
#include "rchroma/model.hpp"
#include "rchroma/pyramid.hpp"
#include "rchroma/spectra.hpp"

using namespace rchroma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

using Matrix = std::vector<std::vector<double>>;

// U^m D^m as an explicit n^2 x n^2 matrix.
Matrix block_average_matrix(int n, int m) {
  const int b = 1 << m;
  const int d = n * n;
  Matrix a(d, std::vector<double>(d, 0.0));
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      if ((p / n) / b == (q / n) / b && (p % n) / b == (q % n) / b) a[p][q] = 1.0 / (b * b);
    }
  }
  return a;
}

// Pixel covariance sum_l c_l (A_l - A_{l+1}) with A_top+1 = 0.
Matrix band_covariance(int n, const std::vector<double>& c) {
  const int d = n * n;
  const int levels = static_cast<int>(c.size());
  Matrix cov(d, std::vector<double>(d, 0.0));
  for (int l = 0; l < levels; ++l) {
    const Matrix a = block_average_matrix(n, l);
    const Matrix next = l + 1 < levels ? block_average_matrix(n, l + 1) : Matrix(d, std::vector<double>(d, 0.0));
    for (int p = 0; p < d; ++p) {
      for (int q = 0; q < d; ++q) cov[p][q] += c[l] * (a[p][q] - next[p][q]);
    }
  }
  return cov;
}

// Pixel covariance of a stationary spectrum: (1/N^2) sum_f S(f) e^{i f (p - q)}.
Matrix spectral_covariance(int n, const std::vector<double>& s) {
  const int d = n * n;
  Matrix cov(d, std::vector<double>(d, 0.0));
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      double acc = 0.0;
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          const double phase = 2.0 * std::numbers::pi * (u * (p / n - q / n) + v * (p % n - q % n)) / n;
          acc += s[u * n + v] * std::cos(phase);
        }
      }
      cov[p][q] = acc / (n * n);
    }
  }
  return cov;
}

// Solves A y = b by Gaussian elimination with partial pivoting.
std::vector<double> solve(Matrix a, std::vector<double> b) {
  const int d = static_cast<int>(b.size());
  for (int k = 0; k < d; ++k) {
    int piv = k;
    for (int i = k + 1; i < d; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    }
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (int i = k + 1; i < d; ++i) {
      const double f = a[i][k] / a[k][k];
      for (int j = k; j < d; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> y(d);
  for (int k = d - 1; k >= 0; --k) {
    double acc = b[k];
    for (int j = k + 1; j < d; ++j) acc -= a[k][j] * y[j];
    y[k] = acc / a[k][k];
  }
  return y;
}

// sqrt(a) C (a C + (1 - a) I)^{-1} x.
Grid posterior_oracle(const Matrix& cov, const Grid& x, double a) {
  const int d = static_cast<int>(cov.size());
  Matrix sys = cov;
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) sys[p][q] = a * cov[p][q] + (p == q ? 1.0 - a : 0.0);
  }
  const auto y = solve(sys, x.data());
  Grid out(x.side());
  for (int p = 0; p < d; ++p) {
    double acc = 0.0;
    for (int q = 0; q < d; ++q) acc += cov[p][q] * y[q];
    out[p] = std::sqrt(a) * acc;
  }
  return out;
}

// E|FFT(x)_f|^2 / N^2 from the pixel covariance.
Grid psd_oracle(const Matrix& cov, int n) {
  Grid out(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      double acc = 0.0;
      for (int p = 0; p < n * n; ++p) {
        for (int q = 0; q < n * n; ++q) {
          const double phase = 2.0 * std::numbers::pi * (u * (p / n - q / n) + v * (p % n - q % n)) / n;
          acc += cov[p][q] * std::cos(phase);
        }
      }
      out.at(u, v) = acc / (n * n);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("model construction and pixel variance") {
  CHECK_THAT(GaussianImageModel::power_law(32).pixel_variance(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(GaussianImageModel::power_law(16, 2.0, 0.3).pixel_variance(), WithinAbs(0.3, 1e-12));
  const auto band = GaussianImageModel::band_power_law(32, 0.0625);
  CHECK_THAT(band.pixel_variance(), WithinAbs(0.0625, 1e-14));
  const auto& c = band.band_variances();
  REQUIRE(c.size() == 6);
  for (std::size_t l = 1; l < c.size(); ++l) CHECK_THAT(c[l] / c[l - 1], WithinRel(4.0, 1e-12));

  double fractions = 0.0;
  for (int l = 0; l < 6; ++l) fractions += band_dimension_fraction(32, l);
  CHECK_THAT(fractions, WithinAbs(1.0, 1e-15));

  CHECK_THROWS_AS(GaussianImageModel::band_separable(8, {1.0, 1.0}), SizeError);
  CHECK_THROWS_AS(GaussianImageModel::band_separable(8, {1.0, -1.0, 1.0, 1.0}), DomainError);
  std::vector<double> asym(16, 1.0);
  asym[1] = 2.0;
  CHECK_THROWS_AS(GaussianImageModel::spectral(4, asym), DomainError);
  CHECK_THROWS_AS(GaussianImageModel::power_law(32).downsampled(1), ArgumentError);
}

TEST_CASE("expected PSD matches the pixel covariance") {
  const int n = 8;
  const std::vector<double> c{0.3, 1.1, 2.0, 5.0};
  const auto band = GaussianImageModel::band_separable(n, c);
  const Grid oracle = psd_oracle(band_covariance(n, c), n);
  CHECK(max_abs_diff(band.expected_psd(), oracle) < 1e-10);

  const Matrix cov = band_covariance(n, c);
  double trace = 0.0;
  for (int p = 0; p < n * n; ++p) trace += cov[p][p];
  CHECK_THAT(band.pixel_variance(), WithinAbs(trace / (n * n), 1e-12));

  // Each band response sums to the band's dimension.
  for (int l = 0; l < 4; ++l) {
    const Grid r = band_psd_response(n, l);
    double sum = 0.0;
    for (double v : r.data()) sum += v;
    CHECK_THAT(sum / (n * n), WithinAbs(band_dimension_fraction(n, l), 1e-12));
  }
}

TEST_CASE("sample statistics") {
  const auto model = GaussianImageModel::band_power_law(16, 1.0);
  RngStream rng(4, 0);
  Grid total(16);
  const int draws = 4000;
  for (int i = 0; i < draws; ++i) total += psd2d(model.sample(rng));
  total *= 1.0 / draws;
  const auto got = radial_average(total);
  const auto want = radial_average(model.expected_psd());
  for (std::size_t b = 0; b < got.power.size(); ++b) {
    CHECK_THAT(got.power[b], WithinRel(want.power[b], 0.1));
  }

  // Coloring is linear and reproduces each band scaled by sqrt(c_l).
  const Grid w = rng.normal_grid(16);
  const auto bw = band_decompose(w, 5);
  const auto bx = band_decompose(model.color(w), 5);
  for (int l = 0; l < 5; ++l) {
    CHECK(max_abs_diff(bx.bands[l], std::sqrt(model.band_variances()[l]) * bw.bands[l]) < 1e-12);
  }
}

TEST_CASE("posterior mean against a dense solve") {
  RngStream rng(5, 0);
  const int n = 4;
  const auto spectral = GaussianImageModel::power_law(n, 0.7, 2.0);
  const Matrix scov = spectral_covariance(n, spectral.spectrum());
  const std::vector<double> c{0.5, 1.5, 4.0};
  const auto band = GaussianImageModel::band_separable(n, c);
  const Matrix bcov = band_covariance(n, c);
  for (double a : {0.05, 0.5, 0.97}) {
    const Grid x = rng.normal_grid(n);
    CHECK(max_abs_diff(spectral.posterior_mean(x, a), posterior_oracle(scov, x, a)) < 1e-10);
    CHECK(max_abs_diff(band.posterior_mean(x, a), posterior_oracle(bcov, x, a)) < 1e-10);

    // eps_hat = (x - sqrt(a) x0_hat) / sqrt(1 - a)
    Grid eps = x;
    eps.axpy(-std::sqrt(a), spectral.posterior_mean(x, a));
    eps *= 1.0 / std::sqrt(1.0 - a);
    CHECK(max_abs_diff(spectral.noise_prediction(x, a), eps) < 1e-10);

    // With a mean: posterior of x - sqrt(a) mu, shifted back.
    const Grid mu = rng.normal_grid(n);
    const auto shifted = spectral.with_mean(mu);
    Grid centered = x;
    centered.axpy(-std::sqrt(a), mu);
    CHECK(max_abs_diff(shifted.posterior_mean(x, a), posterior_oracle(scov, centered, a) + mu) < 1e-10);
  }
  // alpha = 1 returns the input.
  const Grid x = rng.normal_grid(n);
  CHECK(max_abs_diff(spectral.posterior_mean(x, 1.0), x) < 1e-12);
  // S = 0 predicts all of x as noise.
  const auto zero = GaussianImageModel::spectral(n, std::vector<double>(n * n, 0.0));
  CHECK(max_abs_diff(zero.noise_prediction(x, 0.3), (1.0 / std::sqrt(0.7)) * x) < 1e-12);
}

TEST_CASE("band model downsampling is exact") {
  RngStream rng(6, 0);
  const auto model = GaussianImageModel::band_power_law(32, 0.25);
  for (int m = 1; m <= 4; ++m) {
    const auto coarse = model.downsampled(m);
    REQUIRE(coarse.side() == (32 >> m));
    for (std::size_t j = 0; j < coarse.band_variances().size(); ++j) {
      CHECK_THAT(coarse.band_variances()[j], WithinRel(model.band_variances()[j + m] / std::pow(4.0, m), 1e-14));
    }
    // D^m E[x0 | x_t] is the coarse model's posterior for the rescaled D^m x_t.
    for (double a : {0.1, 0.6, 0.95}) {
      const Grid x = rng.normal_grid(32);
      const double c = std::pow(4.0, m);
      const double lambda = 1.0 / std::sqrt(a + (1.0 - a) / c);
      const double a_adj = c * a / ((c - 1.0) * a + 1.0);
      const Grid lhs = downsample(model.posterior_mean(x, a), m);
      const Grid rhs = coarse.posterior_mean(lambda * downsample(x, m), a_adj);
      CHECK(max_abs_diff(lhs, rhs) < 1e-10);
    }
  }
}
