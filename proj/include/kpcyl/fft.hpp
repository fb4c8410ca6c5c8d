#pragma once

#include <complex>
#include <memory>

#include "kpcyl/grid.hpp"
#include "kpcyl/util.hpp"

namespace kpcyl {

// Shared FFTW plans for one grid geometry. Plans are created once per (nx, ny)
// under a lock and executed concurrently on caller-owned aligned buffers.
// FFTW_ESTIMATE keeps planning deterministic, which the reproducibility
// contract of the CLI relies on.
class Fft {
 public:
  static std::shared_ptr<const Fft> get(const Grid& grid);
  ~Fft();

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  // 2-D real <-> half-spectrum. forward2d normalizes by 1/(nx*ny) so the
  // coefficients are the amplitudes of the trigonometric interpolant;
  // backward2d is then an exact inverse. backward2d clobbers `spec`.
  void forward2d(const double* phys, std::complex<double>* spec) const;
  void backward2d(std::complex<double>* spec, double* phys) const;

  // 1-D complex transforms of length nx (normalized forward, exact inverse).
  void forward1d(std::complex<double>* inout) const;
  void backward1d(std::complex<double>* inout) const;

  int nx() const { return nx_; }
  int ny() const { return ny_; }

 private:
  Fft(int nx, int ny);
  int nx_, ny_;
  void* plan_r2c_ = nullptr;
  void* plan_c2r_ = nullptr;
  void* plan_fwd1_ = nullptr;
  void* plan_bwd1_ = nullptr;
};

}  // namespace kpcyl
