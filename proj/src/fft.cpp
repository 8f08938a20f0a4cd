#include "fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>

namespace textphase {

namespace {
// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  std::lock_guard lock(planner_mutex());
  real_ = fftw_alloc_real(n_);
  auto* cplx = fftw_alloc_complex(n_ / 2 + 1);
  complex_ = cplx;
  if (!real_ || !cplx) throw std::bad_alloc();
  const int len = static_cast<int>(n_);
  forward_plan_ = fftw_plan_dft_r2c_1d(len, real_, cplx, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(len, cplx, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(real_);
  fftw_free(complex_);
}

std::span<std::complex<double>> RealFft::spectrum() noexcept {
  return {reinterpret_cast<std::complex<double>*>(complex_), bins()};
}

void RealFft::forward() { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }
void RealFft::inverse() { fftw_execute(static_cast<fftw_plan>(inverse_plan_)); }

std::size_t next_pow2(std::size_t n) noexcept {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace textphase
