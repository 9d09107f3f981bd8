#include "rchroma/pyramid.hpp"

#include <fstream>
#include <iomanip>
#include <stdexcept>
#include <string>

#include "rchroma/chroma.hpp"
#include "rchroma/errors.hpp"

namespace rchroma {

Grid downsample(const Grid& g) {
  if (g.side() < 2) throw SizeError("downsample: cannot pool a 1x1 grid");
  const int n = g.side() / 2;
  const int c = g.channels();
  Grid out(n, c);
  for (int r = 0; r < n; ++r) {
    for (int col = 0; col < n; ++col) {
      for (int ch = 0; ch < c; ++ch) {
        // Pairwise sums: four equal values add to exactly 4v, so D U == I bitwise.
        out.at(r, col, ch) = 0.25 * ((g.at(2 * r, 2 * col, ch) + g.at(2 * r, 2 * col + 1, ch)) +
                                     (g.at(2 * r + 1, 2 * col, ch) + g.at(2 * r + 1, 2 * col + 1, ch)));
      }
    }
  }
  return out;
}

Grid upsample(const Grid& g) {
  const int n = g.side() * 2;
  const int c = g.channels();
  Grid out(n, c);
  for (int r = 0; r < n; ++r) {
    for (int col = 0; col < n; ++col) {
      for (int ch = 0; ch < c; ++ch) out.at(r, col, ch) = g.at(r / 2, col / 2, ch);
    }
  }
  return out;
}

Grid downsample(const Grid& g, int m) {
  if (m < 0) throw ArgumentError("downsample: negative level");
  Grid out = g;
  for (int i = 0; i < m; ++i) out = downsample(out);
  return out;
}

Grid upsample(const Grid& g, int m) {
  if (m < 0) throw ArgumentError("upsample: negative level");
  Grid out = g;
  for (int i = 0; i < m; ++i) out = upsample(out);
  return out;
}

Grid project(const Grid& g, int m) {
  if (m == 0) return g;
  // Repeated 2x2 means rather than one big block sum, so the result is
  // bitwise identical to upsample(downsample(g, m), m).
  return upsample(downsample(g, m), m);
}

Grid BandStack::reconstruct() const {
  Grid out = residual_mean;
  for (const Grid& b : bands) out += b;
  return out;
}

BandStack band_decompose(const Grid& g, int levels) {
  const int max = max_levels(g.side());
  if (levels < 1 || levels > max) {
    throw SizeError("band_decompose: levels must lie in [1, " + std::to_string(max) + "] for side " +
                    std::to_string(g.side()));
  }
  BandStack out;
  out.bands.reserve(static_cast<std::size_t>(levels));
  // coarse holds D^m g; its upsampled copy is the projection at level m.
  Grid coarse = g;
  Grid proj = g;
  for (int m = 0; m < levels; ++m) {
    if (coarse.side() == 1) {
      out.bands.push_back(proj);
      proj = Grid(g.side(), g.channels());
      break;
    }
    Grid next = downsample(coarse);
    Grid next_proj = upsample(next, m + 1);
    out.bands.push_back(proj - next_proj);
    coarse = std::move(next);
    proj = std::move(next_proj);
  }
  out.residual_mean = std::move(proj);
  return out;
}

std::vector<double> band_energies(const BandStack& b) {
  std::vector<double> out;
  out.reserve(b.bands.size());
  for (const Grid& band : b.bands) out.push_back(squared_norm(band));
  return out;
}

MeasuredChromatography measured_chromatography(std::span<const std::pair<double, Grid>> fields,
                                               int levels, bool include_residual) {
  std::vector<double> times;
  times.reserve(fields.size());
  for (const auto& [t, g] : fields) {
    times.push_back(t);
    if (!fields.empty()) require_same_shape(fields.front().second, g, "measured_chromatography");
  }
  MeasuredChromatography mc;
  mc.levels = levels;
  mc.profile = ChromatographyProfile(times, include_residual ? levels + 1 : levels);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const BandStack stack = band_decompose(fields[i].second, levels);
    auto e = band_energies(stack);
    const double rest = squared_norm(stack.residual_mean);
    double total = 0.0;
    for (double v : e) total += v;
    if (include_residual) total += rest;
    const bool degenerate = !(total > 0.0);
    if (!degenerate) {
      for (int m = 0; m < levels; ++m) mc.profile.value(m, i) = e[static_cast<std::size_t>(m)] / total;
      if (include_residual) mc.profile.value(levels, i) = rest / total;
    }
    mc.energies.push_back(std::move(e));
    mc.residual_energy.push_back(rest);
    mc.degenerate.push_back(degenerate);
  }
  return mc;
}

void write_band_energies_csv(const std::filesystem::path& path, const MeasuredChromatography& mc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "t";
  for (int m = 0; m < mc.levels; ++m) out << ",e" << m;
  out << '\n' << std::setprecision(17);
  const auto& times = mc.profile.times();
  for (std::size_t i = 0; i < times.size(); ++i) {
    out << times[i];
    for (double e : mc.energies[i]) out << ',' << e;
    out << '\n';
  }
}

}  // namespace rchroma
