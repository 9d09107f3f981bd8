#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace rchroma {

// Alpha is clamped to [kAlphaEps, 1 - kAlphaEps] so SNR stays finite.
inline constexpr double kAlphaEps = 1e-9;

// SNR = alpha / (1 - alpha). Throws DomainError unless 0 < alpha < 1.
double snr(double alpha);
// Same, with 1 - alpha supplied by the caller when it is known more precisely
// than the difference 1 - alpha.
double snr(double alpha, double one_minus_alpha);

// alpha = v / (1 + v). Throws DomainError unless v > 0.
double snr_inverse(double v);

// A monotonically decreasing noise schedule alpha(t) on a closed time interval.
//
// Every kind is evaluated through its log-SNR lambda(t) = log(alpha / (1 - alpha)),
// which keeps both alpha and 1 - alpha accurate near the endpoints. Clamping
// alpha to [kAlphaEps, 1 - kAlphaEps] is a clamp of lambda to
// [-kMaxLogSnr, kMaxLogSnr].
//
// Time conventions: linear, cosine and tabulated schedules live on [0, 1]
// (tabulated: the knot range); the natural schedule alpha = exp(-t) lives on
// [0, t_max]. Discrete step k of T maps to t = t_min + k / T * (t_max - t_min).
class NoiseSchedule {
 public:
  enum class Kind { linear, cosine, natural, tabulated };

  struct Knot {
    double t;
    double alpha;
    friend bool operator==(const Knot&, const Knot&) = default;
  };

  static constexpr double kMaxLogSnr = 20.723265835946411;  // logit(1 - 1e-9)

  // Cumulative product of the DDPM per-step variance ramp
  // beta_k = linspace(beta_start, beta_end, steps); alpha(k / steps) = prod_{i<=k} (1 - beta_i).
  static NoiseSchedule linear(double beta_start = 1e-4, double beta_end = 2e-2, int steps = 1000);
  // alpha = f(t) / f(0), f(t) = cos^2((t + s) / (1 + s) * pi / 2).
  static NoiseSchedule cosine(double offset = 0.008);
  // alpha = exp(-t): the Ornstein-Uhlenbeck process with theta = 1/2, sigma = 1.
  static NoiseSchedule natural(double t_max = 14.0);
  // Knots must be strictly increasing in t and strictly decreasing in alpha,
  // with alpha in [0, 1]. Interpolates linearly in log-SNR.
  static NoiseSchedule tabulated(std::vector<Knot> knots);
  // CSV with header `t,alpha`.
  static NoiseSchedule from_csv(const std::filesystem::path& path);

  Kind kind() const noexcept { return kind_; }
  std::string name() const;
  double t_min() const noexcept { return t_min_; }
  double t_max() const noexcept { return t_max_; }
  bool contains(double t) const noexcept;
  double cosine_offset() const noexcept { return offset_; }
  const std::vector<Knot>& knots() const noexcept { return knots_; }

  double log_snr(double t) const;
  double alpha(double t) const;
  double one_minus_alpha(double t) const;
  double snr(double t) const;

  // Earliest t with log_snr(t) == lambda, by bisection to full precision.
  // Throws RangeError if lambda lies outside [log_snr(t_max), log_snr(t_min)].
  double time_for_log_snr(double lambda) const;

  friend bool operator==(const NoiseSchedule&, const NoiseSchedule&) = default;

 private:
  NoiseSchedule(Kind kind, double t_min, double t_max) : kind_(kind), t_min_(t_min), t_max_(t_max) {}
  void check(double t) const;
  double raw_log_snr(double t) const;

  Kind kind_;
  double t_min_;
  double t_max_;
  double offset_ = 0.0;
  std::vector<Knot> knots_;          // tabulated: as given; linear: generated
  std::vector<double> knot_log_snr_;  // clamped lambda at each knot
};

// Free-function forms of the schedule queries.
double alpha(const NoiseSchedule& s, double t);

// t* = -ln alpha(s, t): the time at which the natural schedule has the same alpha.
double natural_remap(const NoiseSchedule& s, double t);

// t' with alpha(b, t') == alpha(a, t). Throws RangeError when b never reaches alpha(a, t).
double remap_between(const NoiseSchedule& a, const NoiseSchedule& b, double t);

// Evenly spaced times covering the whole schedule domain, ascending.
std::vector<double> uniform_times(const NoiseSchedule& s, int count);

}  // namespace rchroma
