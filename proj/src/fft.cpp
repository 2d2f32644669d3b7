#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace mdnls::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.backward);
    }
  }

  // The FFTW planner is not thread-safe; execution with the new-array
  // interface is.
  const PlanPair& get(int dim, std::size_t points) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(dim, points);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const int n = static_cast<int>(points);
    const int dims[2] = {n, n};
    const std::size_t total = dim == 1 ? points : points * points;
    std::vector<std::complex<double>> scratch(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair plans;
    plans.forward = fftw_plan_dft(dim, dims, buf, buf, FFTW_FORWARD, flags);
    plans.backward = fftw_plan_dft(dim, dims, buf, buf, FFTW_BACKWARD, flags);
    if (plans.forward == nullptr || plans.backward == nullptr) {
      throw std::runtime_error("FFTW failed to create a plan");
    }
    return plans_.emplace(key, plans).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, std::size_t>, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(fftw_plan plan, const Grid& grid, std::span<std::complex<double>> data) {
  if (data.size() != grid.size()) throw std::invalid_argument("DFT buffer does not match grid size");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void dft_forward(const Grid& grid, std::span<std::complex<double>> data) {
  execute(cache().get(grid.dim(), grid.points()).forward, grid, data);
}

void dft_backward(const Grid& grid, std::span<std::complex<double>> data) {
  execute(cache().get(grid.dim(), grid.points()).backward, grid, data);
}

}  // namespace mdnls::detail
