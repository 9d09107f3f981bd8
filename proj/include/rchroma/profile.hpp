#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace rchroma {

// Per-level curves r_m(t) sampled on a time grid. Stored level-major:
// value(m, i) is level m at times()[i].
class ChromatographyProfile {
 public:
  ChromatographyProfile() = default;
  ChromatographyProfile(std::vector<double> times, int levels);

  const std::vector<double>& times() const noexcept { return times_; }
  int levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return times_.size(); }

  double& value(int m, std::size_t i) { return values_[index(m, i)]; }
  double value(int m, std::size_t i) const { return values_[index(m, i)]; }

  // The M values at time index i.
  std::vector<double> column(std::size_t i) const;
  std::span<const double> row(int m) const;

  // True if every column is non-negative and sums to 1 within tol.
  bool is_normalized(double tol = 1e-9) const;

  // Time index at which level m attains its maximum (first on ties).
  std::size_t peak_index(int m) const;

  // CSV: `t,r0,r1,...,r{M-1}`, one row per time.
  void write_csv(const std::filesystem::path& path) const;

 private:
  std::size_t index(int m, std::size_t i) const;

  std::vector<double> times_;
  int levels_ = 0;
  std::vector<double> values_;
};

}  // namespace rchroma
