#pragma once

#include <cstdint>
#include <random>

#include "rchroma/grid.hpp"

namespace rchroma {

// Independent, reproducible random stream identified by (root seed, stream index).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  // i.i.d. standard normal entries.
  Grid normal_grid(int side, int channels = 1);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace rchroma
