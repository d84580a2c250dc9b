#include "nlslab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace nlslab::fft {
namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plans] : plans_) {
      fftw_destroy_plan(plans.fwd);
      fftw_destroy_plan(plans.inv);
    }
  }

  PlanPair get(const Grid& grid) {
    const auto key = std::make_pair(grid.dim(), grid.points_per_axis());
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    int dims[Grid::kMaxDim];
    for (int a = 0; a < grid.dim(); ++a) dims[a] = static_cast<int>(grid.points_per_axis());
    CVector scratch(grid.size());
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    PlanPair p;
    p.fwd = fftw_plan_dft(grid.dim(), dims, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.inv = fftw_plan_dft(grid.dim(), dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (p.fwd == nullptr || p.inv == nullptr) throw Error("FFTW failed to create a plan");
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, std::size_t>, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void forward(const Grid& grid, cplx* data) {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(cache().get(grid).fwd, buf, buf);
}

void inverse(const Grid& grid, cplx* data) {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(cache().get(grid).inv, buf, buf);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) data[i] *= scale;
}

}  // namespace nlslab::fft
