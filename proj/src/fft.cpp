#include "rchroma/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "rchroma/errors.hpp"

namespace rchroma {
namespace {

// Plans are created once per (side, direction) and executed through the
// new-array interface, which FFTW documents as thread-safe. Only planning
// needs the lock.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int side, bool inverse) {
    std::lock_guard lock(mu_);
    const auto key = std::make_pair(side, inverse);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(side) * side);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_2d(side, side, p, p, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void fft2_inplace(Spectrum& data, int side, bool inverse) {
  if (!is_power_of_two(side) || data.size() != static_cast<std::size_t>(side) * side) {
    throw SizeError("fft2: data must be side x side with side a power of two");
  }
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(side, inverse), p, p);
}

Spectrum fft2(const Grid& g) {
  if (g.channels() != 1) throw SizeError("fft2: expects a single-channel grid");
  Spectrum data(g.data().begin(), g.data().end());
  fft2_inplace(data, g.side(), false);
  return data;
}

Grid ifft2_real(Spectrum data, int side) {
  fft2_inplace(data, side, true);
  const double scale = 1.0 / (static_cast<double>(side) * side);
  Grid out(side);
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i].real() * scale;
  return out;
}

}  // namespace rchroma
