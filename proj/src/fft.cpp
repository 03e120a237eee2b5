#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace cmaxent::detail {
namespace {

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

// Planning is not thread-safe in FFTW; execution through the new-array
// interface is, as long as buffers share the planner's alignment (fftw_malloc).
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(std::size_t n) {
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  RealBuffer re(fftw_alloc_real(n));
  ComplexBuffer cx(fftw_alloc_complex(n / 2 + 1));
  PlanPair p;
  const int len = static_cast<int>(n);
  p.forward = fftw_plan_dft_r2c_1d(len, re.get(), cx.get(), FFTW_ESTIMATE);
  p.inverse = fftw_plan_dft_c2r_1d(len, cx.get(), re.get(), FFTW_ESTIMATE);
  return cache.emplace(n, p).first->second;
}

}  // namespace

std::vector<std::complex<double>> forward_real(std::span<const double> samples) {
  const std::size_t n = samples.size();
  const PlanPair& plan = plans_for(n);
  RealBuffer in(fftw_alloc_real(n));
  ComplexBuffer out(fftw_alloc_complex(n / 2 + 1));
  std::copy(samples.begin(), samples.end(), in.get());
  fftw_execute_dft_r2c(plan.forward, in.get(), out.get());
  std::vector<std::complex<double>> bins(n / 2 + 1);
  for (std::size_t k = 0; k < bins.size(); ++k) bins[k] = {out[k][0], out[k][1]};
  return bins;
}

std::vector<double> inverse_real(std::span<const std::complex<double>> bins, std::size_t n) {
  const PlanPair& plan = plans_for(n);
  ComplexBuffer in(fftw_alloc_complex(n / 2 + 1));
  RealBuffer out(fftw_alloc_real(n));
  for (std::size_t k = 0; k <= n / 2; ++k) {
    in[k][0] = bins[k].real();
    in[k][1] = bins[k].imag();
  }
  // c2r destroys its input; the buffer above is private to this call.
  fftw_execute_dft_c2r(plan.inverse, in.get(), out.get());
  return std::vector<double>(out.get(), out.get() + n);
}

}  // namespace cmaxent::detail
