#include "rchroma/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "rchroma/errors.hpp"

namespace rchroma {
namespace {

double clamp_log_snr(double lambda) {
  if (std::isnan(lambda)) {
    throw DomainError("log-SNR evaluated to NaN");
  }
  return std::clamp(lambda, -NoiseSchedule::kMaxLogSnr, NoiseSchedule::kMaxLogSnr);
}

double logit(double alpha) {
  if (alpha <= 0.0) return -std::numeric_limits<double>::infinity();
  if (alpha >= 1.0) return std::numeric_limits<double>::infinity();
  return std::log(alpha) - std::log1p(-alpha);
}

std::string describe_knot(std::size_t index, const NoiseSchedule::Knot& k) {
  std::ostringstream os;
  os << "knot " << index << " (t=" << k.t << ", alpha=" << k.alpha << ")";
  return os.str();
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

double snr(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("snr: alpha must lie in (0, 1)");
  }
  return alpha / (1.0 - alpha);
}

double snr(double alpha, double one_minus_alpha) {
  if (!(alpha > 0.0 && one_minus_alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("snr: alpha must lie in (0, 1)");
  }
  return alpha / one_minus_alpha;
}

double snr_inverse(double v) {
  if (!(v > 0.0) || std::isinf(v)) {
    throw DomainError("snr_inverse: SNR must be positive and finite");
  }
  return v / (1.0 + v);
}

NoiseSchedule NoiseSchedule::linear(double beta_start, double beta_end, int steps) {
  if (steps < 1 || !(beta_start > 0.0) || !(beta_end < 1.0) || beta_end < beta_start) {
    throw ArgumentError("linear schedule: need steps >= 1 and 0 < beta_start <= beta_end < 1");
  }
  NoiseSchedule s(Kind::linear, 0.0, 1.0);
  s.knots_.reserve(static_cast<std::size_t>(steps) + 1);
  s.knot_log_snr_.reserve(static_cast<std::size_t>(steps) + 1);
  s.knots_.push_back({0.0, 1.0});
  s.knot_log_snr_.push_back(kMaxLogSnr);
  double log_alpha = 0.0;
  for (int k = 1; k <= steps; ++k) {
    const double beta =
        steps == 1 ? beta_start
                   : beta_start + (beta_end - beta_start) * static_cast<double>(k - 1) / (steps - 1);
    log_alpha += std::log1p(-beta);
    const double one_minus = -std::expm1(log_alpha);
    const double t = static_cast<double>(k) / steps;
    s.knots_.push_back({t, std::exp(log_alpha)});
    s.knot_log_snr_.push_back(clamp_log_snr(log_alpha - std::log(one_minus)));
  }
  s.knots_.back().t = 1.0;
  return s;
}

NoiseSchedule NoiseSchedule::cosine(double offset) {
  if (!(offset >= 0.0) || !std::isfinite(offset)) {
    throw ArgumentError("cosine schedule: offset must be a finite non-negative number");
  }
  NoiseSchedule s(Kind::cosine, 0.0, 1.0);
  s.offset_ = offset;
  return s;
}

NoiseSchedule NoiseSchedule::natural(double t_max) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw ArgumentError("natural schedule: t_max must be positive and finite");
  }
  return NoiseSchedule(Kind::natural, 0.0, t_max);
}

NoiseSchedule NoiseSchedule::tabulated(std::vector<Knot> knots) {
  if (knots.size() < 2) {
    throw ArgumentError("tabulated schedule: need at least two knots");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const Knot& k = knots[i];
    if (!std::isfinite(k.t) || !std::isfinite(k.alpha)) {
      throw ArgumentError("tabulated schedule: " + describe_knot(i, k) + " is not finite");
    }
    if (k.alpha < 0.0 || k.alpha > 1.0) {
      throw ArgumentError("tabulated schedule: " + describe_knot(i, k) + " has alpha outside [0, 1]");
    }
    if (i > 0) {
      if (!(k.t > knots[i - 1].t)) {
        throw ArgumentError("tabulated schedule: " + describe_knot(i, k) +
                            " does not strictly increase in t");
      }
      if (!(k.alpha < knots[i - 1].alpha)) {
        throw ArgumentError("tabulated schedule: " + describe_knot(i, k) +
                            " does not strictly decrease in alpha");
      }
    }
  }
  NoiseSchedule s(Kind::tabulated, knots.front().t, knots.back().t);
  s.knot_log_snr_.reserve(knots.size());
  for (const Knot& k : knots) {
    s.knot_log_snr_.push_back(clamp_log_snr(logit(k.alpha)));
  }
  s.knots_ = std::move(knots);
  return s;
}

NoiseSchedule NoiseSchedule::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ArgumentError("cannot open schedule file " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) || trim(line) != "t,alpha") {
    throw ArgumentError(path.string() + ": expected header `t,alpha`");
  }
  std::vector<Knot> knots;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ArgumentError(path.string() + ":" + std::to_string(line_no) + ": expected `t,alpha`");
    }
    try {
      std::size_t used_t = 0;
      std::size_t used_a = 0;
      const std::string ts = trim(line.substr(0, comma));
      const std::string as = trim(line.substr(comma + 1));
      const double t = std::stod(ts, &used_t);
      const double a = std::stod(as, &used_a);
      if (used_t != ts.size() || used_a != as.size()) throw std::invalid_argument("trailing");
      knots.push_back({t, a});
    } catch (const std::logic_error&) {
      throw ArgumentError(path.string() + ":" + std::to_string(line_no) + ": malformed number");
    }
  }
  return tabulated(std::move(knots));
}

std::string NoiseSchedule::name() const {
  switch (kind_) {
    case Kind::linear: return "linear";
    case Kind::cosine: return "cosine";
    case Kind::natural: return "natural";
    case Kind::tabulated: return "tabulated";
  }
  return "unknown";
}

bool NoiseSchedule::contains(double t) const noexcept { return t >= t_min_ && t <= t_max_; }

void NoiseSchedule::check(double t) const {
  if (!contains(t)) {
    std::ostringstream os;
    os << name() << " schedule: t=" << t << " outside [" << t_min_ << ", " << t_max_ << "]";
    throw DomainError(os.str());
  }
}

double NoiseSchedule::raw_log_snr(double t) const {
  switch (kind_) {
    case Kind::natural:
      return -std::log(std::expm1(t));
    case Kind::cosine: {
      // 1 - alpha = (cos^2 a0 - cos^2 a) / cos^2 a0 = sin(a - a0) sin(a + a0) / cos^2 a0
      const double half_pi = std::numbers::pi / 2.0;
      const double scale = half_pi / (1.0 + offset_);
      const double a = (t + offset_) * scale;
      const double c = std::cos(a);
      if (c <= 0.0) return -std::numeric_limits<double>::infinity();
      const double diff = std::sin(t * scale);
      const double sum = std::sin((t + 2.0 * offset_) * scale);
      return 2.0 * std::log(c) - std::log(diff) - std::log(sum);
    }
    case Kind::linear:
    case Kind::tabulated: {
      const auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                       [](double v, const Knot& k) { return v < k.t; });
      if (it == knots_.end()) return knot_log_snr_.back();
      const auto hi = static_cast<std::size_t>(it - knots_.begin());
      if (hi == 0) return knot_log_snr_.front();
      const std::size_t lo = hi - 1;
      const double w = (t - knots_[lo].t) / (knots_[hi].t - knots_[lo].t);
      return knot_log_snr_[lo] + w * (knot_log_snr_[hi] - knot_log_snr_[lo]);
    }
  }
  return 0.0;
}

double NoiseSchedule::log_snr(double t) const {
  check(t);
  return clamp_log_snr(raw_log_snr(t));
}

double NoiseSchedule::alpha(double t) const { return 1.0 / (1.0 + std::exp(-log_snr(t))); }

double NoiseSchedule::one_minus_alpha(double t) const { return 1.0 / (1.0 + std::exp(log_snr(t))); }

double NoiseSchedule::snr(double t) const { return std::exp(log_snr(t)); }

double NoiseSchedule::time_for_log_snr(double lambda) const {
  const double top = log_snr(t_min_);
  const double bottom = log_snr(t_max_);
  if (!(lambda <= top && lambda >= bottom)) {
    std::ostringstream os;
    os << name() << " schedule: log-SNR " << lambda << " outside attainable range [" << bottom
       << ", " << top << "]";
    throw RangeError(os.str());
  }
  if (lambda == top) return t_min_;
  // invariant: log_snr(lo) > lambda >= log_snr(hi)
  double lo = t_min_;
  double hi = t_max_;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (clamp_log_snr(raw_log_snr(mid)) > lambda) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double alpha(const NoiseSchedule& s, double t) { return s.alpha(t); }

double natural_remap(const NoiseSchedule& s, double t) {
  return std::log1p(std::exp(-s.log_snr(t)));
}

double remap_between(const NoiseSchedule& a, const NoiseSchedule& b, double t) {
  const double lambda = a.log_snr(t);
  if (a == b) return t;
  return b.time_for_log_snr(lambda);
}

std::vector<double> uniform_times(const NoiseSchedule& s, int count) {
  if (count < 1) {
    throw ArgumentError("uniform_times: count must be positive");
  }
  std::vector<double> times(static_cast<std::size_t>(count));
  if (count == 1) {
    times[0] = s.t_min();
    return times;
  }
  const double span = s.t_max() - s.t_min();
  for (int i = 0; i < count; ++i) {
    times[static_cast<std::size_t>(i)] = s.t_min() + span * static_cast<double>(i) / (count - 1);
  }
  times.back() = s.t_max();
  return times;
}

}  // namespace rchroma
