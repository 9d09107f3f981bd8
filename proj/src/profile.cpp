#include "rchroma/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "rchroma/errors.hpp"

namespace rchroma {

ChromatographyProfile::ChromatographyProfile(std::vector<double> times, int levels)
    : times_(std::move(times)), levels_(levels) {
  if (levels < 1) {
    throw ArgumentError("chromatography profile needs at least one level");
  }
  values_.assign(static_cast<std::size_t>(levels) * times_.size(), 0.0);
}

std::size_t ChromatographyProfile::index(int m, std::size_t i) const {
  if (m < 0 || m >= levels_ || i >= times_.size()) {
    throw ArgumentError("chromatography profile index out of range");
  }
  return static_cast<std::size_t>(m) * times_.size() + i;
}

std::vector<double> ChromatographyProfile::column(std::size_t i) const {
  std::vector<double> out(static_cast<std::size_t>(levels_));
  for (int m = 0; m < levels_; ++m) out[static_cast<std::size_t>(m)] = value(m, i);
  return out;
}

std::span<const double> ChromatographyProfile::row(int m) const {
  return std::span<const double>(values_).subspan(index(m, 0), times_.size());
}

bool ChromatographyProfile::is_normalized(double tol) const {
  for (std::size_t i = 0; i < times_.size(); ++i) {
    double sum = 0.0;
    for (int m = 0; m < levels_; ++m) {
      const double v = value(m, i);
      if (!(v >= 0.0)) return false;
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

std::size_t ChromatographyProfile::peak_index(int m) const {
  const auto r = row(m);
  return static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
}

void ChromatographyProfile::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "t";
  for (int m = 0; m < levels_; ++m) out << ",r" << m;
  out << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < times_.size(); ++i) {
    out << times_[i];
    for (int m = 0; m < levels_; ++m) out << ',' << value(m, i);
    out << '\n';
  }
}

}  // namespace rchroma
