#include "rchroma/grid.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "rchroma/errors.hpp"

namespace rchroma {
namespace {

void check_shape(int side, int channels) {
  if (!is_power_of_two(side)) {
    throw SizeError("grid side " + std::to_string(side) + " is not a positive power of two");
  }
  if (channels < 1) throw SizeError("grid needs at least one channel");
}

void put_u32(std::ofstream& out, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                              static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b.data(), 4);
}

std::uint32_t get_u32(const unsigned char* p) {
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
         std::uint32_t{p[3]} << 24;
}

}  // namespace

bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

Grid::Grid(int side, int channels, double fill) : side_(side), channels_(channels) {
  check_shape(side, channels);
  data_.assign(static_cast<std::size_t>(side) * side * channels, fill);
}

Grid::Grid(int side, int channels, std::vector<double> data)
    : side_(side), channels_(channels), data_(std::move(data)) {
  check_shape(side, channels);
  if (data_.size() != static_cast<std::size_t>(side) * side * channels) {
    throw SizeError("grid data length does not match side*side*channels");
  }
}

Grid Grid::channel(int ch) const {
  if (ch < 0 || ch >= channels_) throw ArgumentError("channel index out of range");
  Grid out(side_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = data_[i * channels_ + ch];
  return out;
}

void Grid::set_channel(int ch, const Grid& plane) {
  if (ch < 0 || ch >= channels_) throw ArgumentError("channel index out of range");
  if (plane.side() != side_ || plane.channels() != 1) throw SizeError("set_channel: shape mismatch");
  for (std::size_t i = 0; i < plane.size(); ++i) data_[i * channels_ + ch] = plane[i];
}

bool Grid::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Grid& Grid::operator+=(const Grid& other) {
  require_same_shape(*this, other, "grid addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Grid& Grid::operator-=(const Grid& other) {
  require_same_shape(*this, other, "grid subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Grid& Grid::operator*=(double k) {
  for (double& v : data_) v *= k;
  return *this;
}

Grid& Grid::axpy(double k, const Grid& other) {
  require_same_shape(*this, other, "grid axpy");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += k * other.data_[i];
  return *this;
}

double dot(const Grid& a, const Grid& b) {
  require_same_shape(a, b, "dot");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double squared_norm(const Grid& g) { return dot(g, g); }

double max_abs_diff(const Grid& a, const Grid& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double mean(const Grid& g) {
  double sum = 0.0;
  for (double v : g.data()) sum += v;
  return g.size() ? sum / static_cast<double>(g.size()) : 0.0;
}

void require_same_shape(const Grid& a, const Grid& b, const char* what) {
  if (!a.same_shape(b)) {
    throw SizeError(std::string(what) + ": grid shapes differ (" + std::to_string(a.side()) + "x" +
                    std::to_string(a.channels()) + " vs " + std::to_string(b.side()) + "x" +
                    std::to_string(b.channels()) + ")");
  }
}

void write_grid(const std::filesystem::path& path, const Grid& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write("RCG1", 4);
  put_u32(out, static_cast<std::uint32_t>(g.side()));
  put_u32(out, static_cast<std::uint32_t>(g.channels()));
  std::vector<char> buf(g.size() * 4);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(g[i]));
    for (int k = 0; k < 4; ++k) buf[4 * i + k] = static_cast<char>((bits >> (8 * k)) & 0xff);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

Grid read_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open grid file " + path.string());
  std::array<unsigned char, 12> header{};
  in.read(reinterpret_cast<char*>(header.data()), 12);
  if (in.gcount() != 12 || std::memcmp(header.data(), "RCG1", 4) != 0) {
    throw ArgumentError(path.string() + ": not an RCG1 grid file");
  }
  const auto side = get_u32(header.data() + 4);
  const auto channels = get_u32(header.data() + 8);
  if (side == 0 || side > (1u << 15) || channels == 0 || channels > 64) {
    throw ArgumentError(path.string() + ": implausible grid header");
  }
  const std::size_t count = std::size_t{side} * side * channels;
  std::vector<unsigned char> buf(count * 4);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (static_cast<std::size_t>(in.gcount()) != buf.size()) {
    throw ArgumentError(path.string() + ": truncated grid data");
  }
  std::vector<double> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    data[i] = std::bit_cast<float>(get_u32(buf.data() + 4 * i));
  }
  return Grid(static_cast<int>(side), static_cast<int>(channels), std::move(data));
}

}  // namespace rchroma
