#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

namespace rchroma {

// Square field with a power-of-two side, stored row-major with channels
// interleaved: element (row, col, ch) sits at (row * side + col) * channels + ch.
class Grid {
 public:
  Grid() = default;
  explicit Grid(int side, int channels = 1, double fill = 0.0);
  Grid(int side, int channels, std::vector<double> data);

  static Grid constant(int side, double value, int channels = 1) { return Grid(side, channels, value); }

  int side() const noexcept { return side_; }
  int channels() const noexcept { return channels_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool same_shape(const Grid& other) const noexcept {
    return side_ == other.side_ && channels_ == other.channels_;
  }

  double& at(int row, int col, int ch = 0) { return data_[offset(row, col, ch)]; }
  double at(int row, int col, int ch = 0) const { return data_[offset(row, col, ch)]; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::vector<double>& data() noexcept { return data_; }
  const std::vector<double>& data() const noexcept { return data_; }

  // One channel as its own single-channel grid, and the reverse.
  Grid channel(int ch) const;
  void set_channel(int ch, const Grid& plane);

  bool all_finite() const;

  Grid& operator+=(const Grid& other);
  Grid& operator-=(const Grid& other);
  Grid& operator*=(double k);
  // this += k * other
  Grid& axpy(double k, const Grid& other);

  friend Grid operator+(Grid a, const Grid& b) { return a += b; }
  friend Grid operator-(Grid a, const Grid& b) { return a -= b; }
  friend Grid operator*(double k, Grid a) { return a *= k; }
  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t offset(int row, int col, int ch) const {
    return (static_cast<std::size_t>(row) * side_ + col) * channels_ + ch;
  }

  int side_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

bool is_power_of_two(long long n);

// Standard inner product and squared L2 norm over all entries.
double dot(const Grid& a, const Grid& b);
double squared_norm(const Grid& g);
double max_abs_diff(const Grid& a, const Grid& b);
double mean(const Grid& g);

// Throws SizeError unless the grids have identical side and channels.
void require_same_shape(const Grid& a, const Grid& b, const char* what);

// RCG1 binary format: "RCG1", u32 LE side, u32 LE channels, then
// side*side*channels f32 LE values, row-major, channel-interleaved.
void write_grid(const std::filesystem::path& path, const Grid& g);
Grid read_grid(const std::filesystem::path& path);

}  // namespace rchroma
