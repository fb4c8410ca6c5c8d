#include "kpcyl/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace kpcyl {

namespace {
std::mutex plan_mutex;
std::map<std::pair<int, int>, std::weak_ptr<const Fft>>& cache() {
  static auto* m = new std::map<std::pair<int, int>, std::weak_ptr<const Fft>>;
  return *m;
}
}  // namespace

Fft::Fft(int nx, int ny) : nx_(nx), ny_(ny) {
  avec<double> phys(std::size_t(nx) * ny);
  avec<std::complex<double>> spec(std::size_t(ny) * (nx / 2 + 1));
  avec<std::complex<double>> line(nx);
  auto* sp = reinterpret_cast<fftw_complex*>(spec.data());
  auto* ln = reinterpret_cast<fftw_complex*>(line.data());
  // layout: row index = y, contiguous index = x
  plan_r2c_ = fftw_plan_dft_r2c_2d(ny, nx, phys.data(), sp, FFTW_ESTIMATE);
  plan_c2r_ = fftw_plan_dft_c2r_2d(ny, nx, sp, phys.data(), FFTW_ESTIMATE);
  plan_fwd1_ = fftw_plan_dft_1d(nx, ln, ln, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd1_ = fftw_plan_dft_1d(nx, ln, ln, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_r2c_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_c2r_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd1_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd1_));
}

std::shared_ptr<const Fft> Fft::get(const Grid& grid) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(grid.nx, grid.ny);
  if (auto sp = cache()[key].lock()) return sp;
  std::shared_ptr<const Fft> sp(new Fft(grid.nx, grid.ny));
  cache()[key] = sp;
  return sp;
}

void Fft::forward2d(const double* phys, std::complex<double>* spec) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_r2c_),
                       const_cast<double*>(phys),
                       reinterpret_cast<fftw_complex*>(spec));
  const double scale = 1.0 / (double(nx_) * ny_);
  std::size_t n = std::size_t(ny_) * (nx_ / 2 + 1);
  for (std::size_t i = 0; i < n; ++i) spec[i] *= scale;
}

void Fft::backward2d(std::complex<double>* spec, double* phys) const {
  fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_c2r_),
                       reinterpret_cast<fftw_complex*>(spec), phys);
}

void Fft::forward1d(std::complex<double>* inout) const {
  auto* p = reinterpret_cast<fftw_complex*>(inout);
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd1_), p, p);
  const double scale = 1.0 / nx_;
  for (int i = 0; i < nx_; ++i) inout[i] *= scale;
}

void Fft::backward1d(std::complex<double>* inout) const {
  auto* p = reinterpret_cast<fftw_complex*>(inout);
  fftw_execute_dft(static_cast<fftw_plan>(plan_bwd1_), p, p);
}

}  // namespace kpcyl
