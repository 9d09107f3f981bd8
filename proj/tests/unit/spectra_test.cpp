#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "rchroma/fft.hpp"
#include "rchroma/rng.hpp"
#include "rchroma/spectra.hpp"

using namespace rchroma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// O(N^4) DFT power, the definition itself.
Grid brute_psd(const Grid& g) {
  const int n = g.side();
  Grid out(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      std::complex<double> acc = 0.0;
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          acc += g.at(r, c) * std::polar(1.0, -2.0 * std::numbers::pi * (u * r + v * c) / n);
        }
      }
      out.at(u, v) = std::norm(acc) / (n * n);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("psd2d conventions") {
  const int n = 8;
  const Grid p = psd2d(Grid::constant(n, 2.0));
  CHECK_THAT(p.at(0, 0), WithinRel(4.0 * n * n, 1e-12));
  for (std::size_t i = 1; i < p.size(); ++i) CHECK(std::abs(p[i]) < 1e-18 * n * n + 1e-12);

  Grid wave(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) wave.at(r, c) = std::cos(2.0 * std::numbers::pi * 3 * c / n);
  }
  const Grid pw = psd2d(wave);
  int nonzero = 0;
  for (std::size_t i = 0; i < pw.size(); ++i) nonzero += pw[i] > 1e-9;
  CHECK(nonzero == 2);
  CHECK_THAT(pw.at(0, 3), WithinAbs(pw.at(0, n - 3), 1e-12));

  RngStream rng(1, 0);
  const Grid g = rng.normal_grid(8);
  const Grid bp = brute_psd(g);
  const Grid fp = psd2d(g);
  CHECK(max_abs_diff(bp, fp) < 1e-10);

  // Parseval and quadratic scaling.
  double sum = 0.0;
  for (double v : fp.data()) sum += v;
  CHECK_THAT(sum, WithinAbs(squared_norm(g), 1e-9));
  const Grid scaled = psd2d(3.0 * g);
  for (std::size_t i = 0; i < fp.size(); ++i) CHECK_THAT(scaled[i], WithinAbs(9.0 * fp[i], 1e-9));
}

TEST_CASE("inverse transform round trip") {
  RngStream rng(2, 0);
  const Grid g = rng.normal_grid(32);
  CHECK(max_abs_diff(ifft2_real(fft2(g), 32), g) < 1e-12);
}

TEST_CASE("radial average") {
  const int n = 16;
  Grid delta(n);
  delta.at(0, 0) = 5.0;
  const auto r = radial_average(delta);
  CHECK(r.power[0] == 5.0);
  for (std::size_t i = 1; i < r.power.size(); ++i) CHECK(r.power[i] == 0.0);
  for (std::size_t i = 1; i < r.frequency.size(); ++i) CHECK(r.frequency[i] > r.frequency[i - 1]);
  int count = 0;
  for (int c : r.counts) count += c;
  CHECK(count == n * n);

  // Monotone spectrum gives a monotone profile.
  Grid iso(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) iso.at(u, v) = 1.0 / (frequency_squared(u, v, n) + 1.0);
  }
  const auto ri = radial_average(iso);
  for (std::size_t i = 1; i < ri.power.size(); ++i) CHECK(ri.power[i] < ri.power[i - 1]);
}

TEST_CASE("white-noise PSD is flat") {
  RngStream rng(3, 0);
  std::vector<Grid> fields;
  for (int i = 0; i < 500; ++i) fields.push_back(rng.normal_grid(32));
  const auto r = mean_radial_psd(fields);
  CHECK(r.n_samples == 500);
  // Each bin averages counts * 500 chi-square draws; bins with enough of them
  // must be within 5% of 1.
  for (std::size_t i = 0; i < r.power.size(); ++i) {
    if (r.counts[i] >= 8) CHECK_THAT(r.power[i], WithinAbs(1.0, 0.05));
  }
}

TEST_CASE("change PSD trajectory") {
  const auto model = GaussianImageModel::power_law(32);
  const auto s = NoiseSchedule::cosine();
  const auto a = change_psd_trajectory(model, s, 50, 40, 7);
  const auto b = change_psd_trajectory(model, s, 50, 40, 7);
  REQUIRE(a.size() == 49);
  for (std::size_t f = 0; f < a.size(); ++f) {
    CHECK(a[f].t == b[f].t);
    CHECK(a[f].psd.power == b[f].psd.power);
    CHECK(a[f].t < a[f].t_prev);
  }
  CHECK(a.front().t > a.back().t);

  const auto summary = summarize_coarse_to_fine(a, 32);
  CHECK(summary.monotone_fraction >= 0.9);
  CHECK(summary.low_last < summary.low_first);
  CHECK(summary.centroids.back() > summary.centroids.front());
  // The high band (r > side/4) holds few bins at this side; its growth is
  // checked at side 64 in the acceptance run.

  const auto path = std::filesystem::temp_directory_path() / "rchroma_psd.csv";
  write_psd_trajectory_csv(path, a);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,r,power");
  std::filesystem::remove(path);
}
