#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace textphase {

// Real-to-complex transform pair of fixed length backed by FFTW. Owns its
// buffers and plans; unnormalized like FFTW (inverse(forward(x)) == n * x).
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const noexcept { return n_; }
  std::size_t bins() const noexcept { return n_ / 2 + 1; }

  std::span<double> real() noexcept { return {real_, n_}; }
  std::span<std::complex<double>> spectrum() noexcept;

  void forward();  // real() -> spectrum()
  void inverse();  // spectrum() -> real(); spectrum() is clobbered

 private:
  std::size_t n_;
  double* real_;
  void* complex_;
  void* forward_plan_;
  void* inverse_plan_;
};

std::size_t next_pow2(std::size_t n) noexcept;

}  // namespace textphase
