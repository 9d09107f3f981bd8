#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "rchroma/chroma.hpp"
#include "rchroma/errors.hpp"

using namespace rchroma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Natural-schedule time adjustment in closed form.
double natural_tau(double t, int m) { return std::log(std::exp(t) + std::pow(4.0, m) - 1.0) - m * std::log(4.0); }

// Unnormalized natural chromatography written as in the derivation.
std::vector<double> natural_profile_oracle(double ts, int levels) {
  std::vector<double> r(levels);
  double z = 0.0;
  for (int m = 0; m < levels; ++m) {
    const double c = std::pow(4.0, m);
    const double d = std::exp(ts) + c - 1.0;
    r[m] = c * std::exp(ts) / (d * d);
    z += r[m];
  }
  for (double& v : r) v /= z;
  return r;
}

}  // namespace

TEST_CASE("max_levels") {
  CHECK(max_levels(1) == 1);
  CHECK(max_levels(2) == 2);
  CHECK(max_levels(64) == 7);
  CHECK_THROWS_AS(max_levels(48), SizeError);
}

TEST_CASE("time adjustment") {
  const auto nat = NoiseSchedule::natural();
  const auto cos = NoiseSchedule::cosine();
  CHECK(time_adjust(cos, 0.4, 0) == 0.4);
  CHECK_THAT(time_adjust(nat, std::log(4.0), 1), WithinAbs(std::log(7.0 / 4.0), 1e-10));
  for (double t = 0.1; t < 14.0; t += 0.3) {
    for (int m = 0; m <= 6; ++m) {
      CHECK_THAT(time_adjust(nat, t, m), WithinAbs(natural_tau(t, m), 1e-10));
    }
  }
  // SNR at tau_m is 4^m times the SNR at t.
  for (const auto& s : {cos, NoiseSchedule::linear()}) {
    for (double t = 0.1; t < 1.0; t += 0.1) {
      for (int m = 1; m <= 4; ++m) {
        const double tau = time_adjust(s, t, m);
        CHECK_THAT(s.snr(tau), WithinRel(std::pow(4.0, m) * s.snr(t), 1e-9));
        CHECK_THAT(s.alpha(tau), WithinRel(alpha_adjusted(s.alpha(t), m), 1e-9));
      }
    }
  }
}

TEST_CASE("time ordering tau_0 > tau_1 > ...") {
  for (const auto& s : {NoiseSchedule::cosine(), NoiseSchedule::linear(), NoiseSchedule::natural()}) {
    for (double frac = 0.05; frac <= 1.0; frac += 0.05) {
      const double t = s.t_min() + frac * (s.t_max() - s.t_min());
      for (int m = 1; m <= 6; ++m) CHECK(time_adjust(s, t, m) < time_adjust(s, t, m - 1));
    }
  }
}

TEST_CASE("intensity scale") {
  for (int m = 0; m <= 6; ++m) CHECK_THAT(intensity_scale(1.0, m), WithinAbs(1.0, 1e-15));
  CHECK_THAT(intensity_scale(1e-14, 1), WithinAbs(2.0, 1e-12));
  CHECK_THAT(intensity_scale(1.0 / 3.0, 1), WithinAbs(std::sqrt(2.0), 1e-15));
  CHECK_THROWS_AS(intensity_scale(0.0, 1), DomainError);
  CHECK_THROWS_AS(intensity_scale(1.2, 1), DomainError);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1e-9, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng);
    const int m = static_cast<int>(rng() % 7);
    const double l = intensity_scale(a, m);
    CHECK(l >= 1.0);
    CHECK(l <= std::ldexp(1.0, m));
    // Variance preservation: lambda^2 (alpha + (1 - alpha) / 4^m) = 1.
    CHECK_THAT(l * l * (a + (1 - a) / std::pow(4.0, m)), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("adjusted alpha") {
  CHECK(alpha_adjusted(0.37, 0) == 0.37);
  CHECK_THAT(alpha_adjusted(0.5, 1), WithinAbs(0.8, 1e-15));
  CHECK_THAT(alpha_adjusted(0.5, 2), WithinAbs(8.0 / 8.5, 1e-15));
  CHECK_THAT(snr(alpha_adjusted(0.5, 1)), WithinRel(4.0 * snr(0.5), 1e-14));
  CHECK_THROWS_AS(alpha_adjusted(1.0, 1), DomainError);
  CHECK_THROWS_AS(alpha_adjusted(0.0, 1), DomainError);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng);
    const int m = static_cast<int>(rng() % 7);
    const double adj = alpha_adjusted(a, m);
    if (m > 0) CHECK(adj > a);
    CHECK(adj < 1.0);
    CHECK_THAT(adj + alpha_adjusted_complement(a, m), WithinAbs(1.0, 1e-15));
    CHECK_THAT(snr(adj, alpha_adjusted_complement(a, m)), WithinRel(std::pow(4.0, m) * snr(a), 1e-12));
  }
}

TEST_CASE("natural chromatography closed form") {
  const auto r = natural_chromatography(0.0, 3);
  CHECK_THAT(r[0], WithinAbs(16.0 / 21.0, 1e-12));
  CHECK_THAT(r[1], WithinAbs(4.0 / 21.0, 1e-12));
  CHECK_THAT(r[2], WithinAbs(1.0 / 21.0, 1e-12));
  CHECK(natural_chromatography(3.7, 1) == std::vector<double>{1.0});
  CHECK_THROWS_AS(natural_chromatography(1.0, 0), ArgumentError);
  CHECK_THROWS_AS(natural_chromatography(-1.0, 3), DomainError);

  for (double ts = 0.0; ts < 20.0; ts += 0.25) {
    const auto got = natural_chromatography(ts, 6);
    const auto want = natural_profile_oracle(ts, 6);
    double sum = 0.0;
    for (int m = 0; m < 6; ++m) {
      CHECK_THAT(got[m], WithinAbs(want[m], 1e-12));
      CHECK(got[m] >= 0.0);
      sum += got[m];
    }
    CHECK_THAT(sum, WithinAbs(1.0, 1e-12));
  }
  // Large t*: the coarsest level dominates and neighbours differ by a factor 4.
  const auto late = natural_chromatography(40.0, 5);
  for (int m = 0; m + 1 < 5; ++m) CHECK_THAT(late[m + 1] / late[m], WithinRel(4.0, 1e-9));
}

TEST_CASE("chromatography of a schedule") {
  const auto nat = NoiseSchedule::natural();
  const auto times = uniform_times(nat, 50);
  const auto p = chromatography(nat, times, 4);
  CHECK(p.is_normalized(1e-12));
  for (std::size_t i = 0; i < times.size(); ++i) {
    // natural_remap rather than t itself: alpha(0) is clamped below 1.
    const auto r = natural_chromatography(natural_remap(nat, times[i]), 4);
    for (int m = 0; m < 4; ++m) CHECK_THAT(p.value(m, i), WithinAbs(r[m], 1e-12));
  }

  // The cosine profile at t equals the natural profile at the remapped time.
  const auto cos = NoiseSchedule::cosine();
  const auto big = NoiseSchedule::natural(30.0);
  const auto ct = uniform_times(cos, 64);
  const auto cp = chromatography(cos, ct, 6);
  for (std::size_t i = 0; i < ct.size(); ++i) {
    const double tp = remap_between(cos, big, ct[i]);
    const auto r = natural_chromatography(tp, 6);
    for (int m = 0; m < 6; ++m) CHECK_THAT(cp.value(m, i), WithinAbs(r[m], 1e-9));
  }
}

TEST_CASE("finite-difference chromatography") {
  const auto nat = NoiseSchedule::natural();
  std::vector<double> nt;
  for (double t = 0.1; t < 13.9; t += 0.1) nt.push_back(t);
  const double hn = default_fd_step(nat);
  const auto fd = chromatography_numeric(nat, nt, 5, 1e-4);
  const auto cf = chromatography(nat, nt, 5);
  for (std::size_t i = 0; i < nt.size(); ++i) {
    double sum = 0.0;
    for (int m = 0; m < 5; ++m) {
      CHECK_THAT(fd.value(m, i), WithinAbs(cf.value(m, i), 1e-6));
      sum += fd.value(m, i);
    }
    CHECK_THAT(sum, WithinAbs(1.0, 1e-14));
  }
  CHECK(hn == Catch::Approx(14e-4));

  // Cosine with h = 1e-4. Close to t = 1 log-SNR has a log singularity and the
  // O(h^2) truncation error grows past 1e-5 (1.9e-5 at t = 254/255), so the
  // fixed-tolerance check stops at t = 0.98 and the endpoint is checked for
  // second-order convergence instead.
  const auto cos = NoiseSchedule::cosine();
  std::vector<double> ct;
  for (double t : uniform_times(cos, 256)) {
    if (t > 1e-4 && t <= 0.98) ct.push_back(t);
  }
  const auto cfd = chromatography_numeric(cos, ct, 7, 1e-4);
  const auto ccf = chromatography(cos, ct, 7);
  for (std::size_t i = 0; i < ct.size(); ++i) {
    for (int m = 0; m < 7; ++m) CHECK_THAT(cfd.value(m, i), WithinAbs(ccf.value(m, i), 1e-5));
  }
  const std::vector<double> edge{254.0 / 255.0};
  auto err = [&](double h) {
    const auto a = chromatography_numeric(cos, edge, 7, h);
    const auto b = chromatography(cos, edge, 7);
    double worst = 0.0;
    for (int m = 0; m < 7; ++m) worst = std::max(worst, std::abs(a.value(m, 0) - b.value(m, 0)));
    return worst;
  };
  const double e1 = err(1e-4);
  const double e2 = err(5e-5);
  CHECK(e1 / e2 == Catch::Approx(4.0).epsilon(0.05));

  CHECK_THROWS_AS(chromatography_numeric(cos, std::vector<double>{0.0}, 3, 1e-4), DomainError);
  CHECK_THROWS_AS(chromatography_numeric(cos, std::vector<double>{0.99995}, 3, 1e-4), DomainError);
  CHECK_THROWS_AS(chromatography_numeric(cos, std::vector<double>{0.5}, 3, 0.0), ArgumentError);
}

TEST_CASE("profile CSV") {
  const auto cos = NoiseSchedule::cosine();
  const auto p = chromatography(cos, uniform_times(cos, 5), 3);
  const auto path = std::filesystem::temp_directory_path() / "rchroma_profile_test.csv";
  p.write_csv(path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,r0,r1,r2");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 5);
  std::filesystem::remove(path);
}
