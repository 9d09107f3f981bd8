#pragma once

#include <complex>
#include <vector>

#include "rchroma/grid.hpp"

namespace rchroma {

using Spectrum = std::vector<std::complex<double>>;

// Convention used everywhere: unnormalized forward transform, 1/N^2 on the
// inverse, power spectral density |FFT|^2 / N^2.

// In-place 2D DFT of a side x side row-major array. Unnormalized in both
// directions. Safe to call concurrently.
void fft2_inplace(Spectrum& data, int side, bool inverse);

// Forward transform of a single-channel grid.
Spectrum fft2(const Grid& g);
// Inverse transform (with the 1/N^2 factor) keeping the real part.
Grid ifft2_real(Spectrum data, int side);

// Signed frequency index of FFT position k: 0..side/2 then negative.
inline int signed_frequency(int k, int side) { return k <= side / 2 ? k : k - side; }

// |f|^2 in frequency-index units for bin (row, col).
inline double frequency_squared(int row, int col, int side) {
  const double fy = signed_frequency(row, side);
  const double fx = signed_frequency(col, side);
  return fx * fx + fy * fy;
}

}  // namespace rchroma
