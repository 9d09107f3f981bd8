#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "rchroma/errors.hpp"
#include "rchroma/schedule.hpp"

using namespace rchroma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<NoiseSchedule> all_schedules() {
  return {NoiseSchedule::linear(), NoiseSchedule::cosine(), NoiseSchedule::natural(),
          NoiseSchedule::tabulated({{0.0, 0.999}, {0.3, 0.8}, {0.7, 0.1}, {1.0, 1e-4}})};
}

// Cosine alpha straight from its definition, no log-SNR detour.
double cosine_alpha_direct(double t, double s) {
  const double f = std::cos((t + s) / (1 + s) * std::numbers::pi / 2);
  const double f0 = std::cos(s / (1 + s) * std::numbers::pi / 2);
  return f * f / (f0 * f0);
}

// Plain bisection on alpha, written independently of the library.
double bisect_alpha(const NoiseSchedule& s, double target) {
  double lo = s.t_min();
  double hi = s.t_max();
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (s.alpha(mid) > target) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("alpha endpoint and closed-form values") {
  const auto nat = NoiseSchedule::natural();
  CHECK_THAT(alpha(nat, 0.0), WithinAbs(1.0 - kAlphaEps, 1e-15));
  CHECK_THAT(alpha(nat, std::log(2.0)), WithinAbs(0.5, 1e-15));
  CHECK_THAT(alpha(NoiseSchedule::cosine(), 0.0), WithinAbs(1.0 - kAlphaEps, 1e-15));
  CHECK_THROWS_AS(alpha(nat, -0.1), DomainError);
  CHECK_THROWS_AS(alpha(NoiseSchedule::cosine(), 1.5), DomainError);
}

TEST_CASE("cosine alpha matches its defining formula") {
  const auto cos = NoiseSchedule::cosine();
  for (double t = 0.01; t < 0.99; t += 0.01) {
    CHECK_THAT(cos.alpha(t), WithinRel(cosine_alpha_direct(t, 0.008), 1e-12));
  }
}

TEST_CASE("linear schedule is the cumulative DDPM ramp") {
  const auto lin = NoiseSchedule::linear();
  double a = 1.0;
  for (int k = 1; k <= 1000; ++k) {
    a *= 1.0 - (1e-4 + (2e-2 - 1e-4) * (k - 1) / 999.0);
    if (k % 97 == 0) CHECK_THAT(lin.alpha(k / 1000.0), WithinRel(a, 1e-10));
  }
}

TEST_CASE("every schedule is strictly decreasing") {
  for (const auto& s : all_schedules()) {
    const auto ts = uniform_times(s, 400);
    for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
      INFO(s.name() << " t=" << ts[i]);
      CHECK(s.alpha(ts[i]) > s.alpha(ts[i + 1]));
    }
    CHECK(s.alpha(s.t_min()) <= 1.0 - kAlphaEps);
    CHECK(s.alpha(s.t_max()) >= kAlphaEps);
  }
}

TEST_CASE("snr and its inverse") {
  CHECK(snr(0.5) == 1.0);
  CHECK_THAT(snr(0.8), WithinRel(4.0, 1e-15));
  CHECK(snr_inverse(1.0) == 0.5);
  CHECK_THAT(snr_inverse(4.0), WithinRel(0.8, 1e-15));
  CHECK_THROWS_AS(snr(0.0), DomainError);
  CHECK_THROWS_AS(snr(1.0), DomainError);
  CHECK_THROWS_AS(snr_inverse(0.0), DomainError);
  CHECK_THROWS_AS(snr_inverse(-2.0), DomainError);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(1e-6, 1 - 1e-6);
  for (int i = 0; i < 100; ++i) {
    const double a = u(rng);
    CHECK_THAT(snr_inverse(snr(a)), WithinAbs(a, 1e-12));
  }
  for (int i = 0; i <= 1000; ++i) {
    const double a = 1e-6 + (1 - 2e-6) * i / 1000.0;
    CHECK_THAT(snr_inverse(snr(a)), WithinAbs(a, 1e-12));
  }
}

TEST_CASE("natural remap") {
  const auto nat = NoiseSchedule::natural();
  for (double t = 0.05; t < 14.0; t += 0.37) CHECK_THAT(natural_remap(nat, t), WithinAbs(t, 1e-12));

  // alpha = e^-1 on a tabulated schedule gives t* = 1.
  const auto tab = NoiseSchedule::tabulated({{0.0, 0.9}, {0.5, std::exp(-1.0)}, {1.0, 0.01}});
  CHECK_THAT(natural_remap(tab, 0.5), WithinAbs(1.0, 1e-12));

  // Cosine: t* = -ln cos^2((t+s)/(1+s) pi/2) + ln cos^2(s/(1+s) pi/2).
  const auto cos = NoiseSchedule::cosine();
  const double s = 0.008;
  for (double t = 0.02; t < 0.99; t += 0.02) {
    const double a = std::cos((t + s) / (1 + s) * std::numbers::pi / 2);
    const double b = std::cos(s / (1 + s) * std::numbers::pi / 2);
    const double expected = -std::log(a * a) + std::log(b * b);
    CHECK_THAT(natural_remap(cos, t), WithinAbs(expected, 1e-10));
  }
}

TEST_CASE("remap between schedules") {
  const auto lin = NoiseSchedule::linear();
  const auto cos = NoiseSchedule::cosine();
  const auto nat = NoiseSchedule::natural(30.0);
  CHECK(remap_between(cos, cos, 0.37) == 0.37);
  for (double t = 0.05; t < 0.99; t += 0.05) {
    CHECK_THAT(remap_between(cos, nat, t), WithinAbs(natural_remap(cos, t), 1e-9));
  }

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int i = 0; i < 50; ++i) {
    const double t = u(rng);
    const double tp = remap_between(lin, cos, t);
    CHECK_THAT(cos.alpha(tp), WithinAbs(lin.alpha(t), 1e-10));
    CHECK_THAT(tp, WithinAbs(bisect_alpha(cos, lin.alpha(t)), 1e-9));
    CHECK_THAT(remap_between(cos, lin, tp), WithinAbs(t, 1e-8));
  }

  // The natural schedule on [0, 2] never gets below alpha = e^-2.
  CHECK_THROWS_AS(remap_between(cos, NoiseSchedule::natural(2.0), 0.9), RangeError);
}

TEST_CASE("tabulated validation names the offending knot") {
  try {
    NoiseSchedule::tabulated({{0.0, 0.9}, {0.5, 0.95}, {1.0, 0.1}});
    FAIL("expected an error");
  } catch (const ArgumentError& e) {
    CHECK(std::string(e.what()).find("knot 1") != std::string::npos);
  }
  CHECK_THROWS_AS(NoiseSchedule::tabulated({{0.0, 0.9}, {0.0, 0.5}}), ArgumentError);
  CHECK_THROWS_AS(NoiseSchedule::tabulated({{0.0, 0.9}}), ArgumentError);
  CHECK_THROWS_AS(NoiseSchedule::tabulated({{0.0, 1.5}, {1.0, 0.5}}), ArgumentError);
}

TEST_CASE("tabulated schedule interpolates log-SNR linearly") {
  const auto tab = NoiseSchedule::tabulated({{0.0, 0.9}, {1.0, 0.1}});
  // logit 0.9 = ln 9, logit 0.1 = -ln 9; midpoint has log-SNR 0, alpha 0.5.
  CHECK_THAT(tab.alpha(0.5), WithinAbs(0.5, 1e-15));
  CHECK_THAT(tab.log_snr(0.25), WithinAbs(0.5 * std::log(9.0), 1e-14));
}

TEST_CASE("schedule CSV loading") {
  const auto dir = std::filesystem::temp_directory_path() / "rchroma_schedule_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "good.csv");
    f << "t,alpha\n0,0.99\n0.5,0.5\n1,0.01\n";
  }
  const auto s = NoiseSchedule::from_csv(dir / "good.csv");
  CHECK(s.kind() == NoiseSchedule::Kind::tabulated);
  CHECK_THAT(s.alpha(0.5), WithinAbs(0.5, 1e-15));
  {
    std::ofstream f(dir / "bad.csv");
    f << "t,alpha\n0,0.9\n0.5,0.2\n1,0.3\n";
  }
  try {
    NoiseSchedule::from_csv(dir / "bad.csv");
    FAIL("expected an error");
  } catch (const ArgumentError& e) {
    CHECK(std::string(e.what()).find("knot 2") != std::string::npos);
  }
  {
    std::ofstream f(dir / "header.csv");
    f << "time,a\n0,0.9\n";
  }
  CHECK_THROWS_AS(NoiseSchedule::from_csv(dir / "header.csv"), ArgumentError);
  CHECK_THROWS_AS(NoiseSchedule::from_csv(dir / "missing.csv"), ArgumentError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("time_for_log_snr inverts log_snr") {
  for (const auto& s : all_schedules()) {
    for (double t : uniform_times(s, 37)) {
      // Inside the clamped plateau the inverse is not unique.
      if (std::abs(s.log_snr(t)) >= NoiseSchedule::kMaxLogSnr) continue;
      INFO(s.name() << " t=" << t);
      CHECK_THAT(s.time_for_log_snr(s.log_snr(t)), WithinAbs(t, 1e-12 * (s.t_max() - s.t_min())));
    }
  }
}
