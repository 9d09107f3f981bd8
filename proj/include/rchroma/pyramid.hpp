#pragma once

#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "rchroma/grid.hpp"
#include "rchroma/profile.hpp"

namespace rchroma {

// D: 2x2 average pooling. Throws SizeError on a 1x1 grid.
Grid downsample(const Grid& g);
// U: nearest-neighbour 2x upsampling (each pixel becomes a 2x2 block).
Grid upsample(const Grid& g);

// D^m and U^m.
Grid downsample(const Grid& g, int m);
Grid upsample(const Grid& g, int m);

// U^m D^m g without the intermediate grids: every 2^m x 2^m block replaced by its mean.
Grid project(const Grid& g, int m);

// bands[m] = U^m D^m g - U^{m+1} D^{m+1} g, all at full resolution, plus the
// remainder U^M D^M g. When M = log2(side) + 1 the last band is the global mean
// itself and the remainder is zero (there is no D of a single pixel).
struct BandStack {
  std::vector<Grid> bands;
  Grid residual_mean;

  int levels() const noexcept { return static_cast<int>(bands.size()); }
  Grid reconstruct() const;
};

BandStack band_decompose(const Grid& g, int levels);

// ||bands[m]||^2 for each band.
std::vector<double> band_energies(const BandStack& b);

struct MeasuredChromatography {
  // Normalized band energies. With include_residual the profile has one extra
  // row (index `levels`) for the remainder term.
  ChromatographyProfile profile;
  std::vector<std::vector<double>> energies;  // per time: band energies
  std::vector<double> residual_energy;        // per time
  std::vector<bool> degenerate;               // per time: total energy was zero
  int levels = 0;
};

// Normalized band energies of each field. Zero-energy fields are flagged as
// degenerate and their profile column left at zero.
MeasuredChromatography measured_chromatography(std::span<const std::pair<double, Grid>> fields,
                                               int levels, bool include_residual = false);

// CSV `t,e0,...,e{M-1}` of the raw band energies.
void write_band_energies_csv(const std::filesystem::path& path, const MeasuredChromatography& mc);

}  // namespace rchroma
