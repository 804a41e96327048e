#include "fft.hpp"

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace sphlrd::detail {
namespace {

template <class T>
struct FftwFree {
  void operator()(T* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree<T>>;

template <class T>
FftwBuffer<T> allocate(std::size_t n) {
  return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

struct PlanPair {
  fftw_plan forward = nullptr;   // r2c
  fftw_plan backward = nullptr;  // c2r
};

// Planning is not thread-safe in FFTW; executing a shared plan on fresh
// fftw_malloc'd arrays is.
class PlanCache {
public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  PlanPair get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    auto in = allocate<double>(n);
    auto out = allocate<fftw_complex>(n / 2 + 1);
    PlanPair p;
    const int len = static_cast<int>(n);
    p.forward = fftw_plan_dft_r2c_1d(len, in.get(), out.get(), FFTW_ESTIMATE);
    p.backward = fftw_plan_dft_c2r_1d(len, out.get(), in.get(), FFTW_ESTIMATE);
    plans_.emplace(n, p);
    return p;
  }

private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

std::size_t good_fft_size(std::size_t n) {
  std::size_t best = 1;
  while (best < n) best <<= 1;
  for (std::size_t p5 = 1; p5 < best; p5 *= 5) {
    for (std::size_t p35 = p5; p35 < best; p35 *= 3) {
      std::size_t v = p35;
      while (v < n) v <<= 1;
      if (v < best) best = v;
    }
  }
  return best;
}

std::vector<std::complex<double>> real_dft_half(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  const PlanPair plan = plan_cache().get(n);
  auto in = allocate<double>(n);
  auto out = allocate<fftw_complex>(n / 2 + 1);
  std::memcpy(in.get(), x.data(), n * sizeof(double));
  fftw_execute_dft_r2c(plan.forward, in.get(), out.get());
  std::vector<std::complex<double>> result(n / 2 + 1);
  for (std::size_t k = 0; k < result.size(); ++k) result[k] = {out[k][0], out[k][1]};
  return result;
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t len = a.size() + b.size() - 1;
  const std::size_t n = good_fft_size(len);
  const PlanPair plan = plan_cache().get(n);
  const std::size_t half = n / 2 + 1;

  auto ra = allocate<double>(n);
  auto rb = allocate<double>(n);
  auto ca = allocate<fftw_complex>(half);
  auto cb = allocate<fftw_complex>(half);
  std::memset(ra.get(), 0, n * sizeof(double));
  std::memset(rb.get(), 0, n * sizeof(double));
  std::memcpy(ra.get(), a.data(), a.size() * sizeof(double));
  std::memcpy(rb.get(), b.data(), b.size() * sizeof(double));
  fftw_execute_dft_r2c(plan.forward, ra.get(), ca.get());
  fftw_execute_dft_r2c(plan.forward, rb.get(), cb.get());
  for (std::size_t k = 0; k < half; ++k) {
    const double re = ca[k][0] * cb[k][0] - ca[k][1] * cb[k][1];
    const double im = ca[k][0] * cb[k][1] + ca[k][1] * cb[k][0];
    ca[k][0] = re;
    ca[k][1] = im;
  }
  fftw_execute_dft_c2r(plan.backward, ca.get(), ra.get());
  std::vector<double> result(len);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < len; ++i) result[i] = ra[i] * scale;
  return result;
}

}  // namespace sphlrd::detail
