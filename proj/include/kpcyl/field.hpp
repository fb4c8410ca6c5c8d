#pragma once

#include <complex>
#include <memory>

#include "kpcyl/fft.hpp"
#include "kpcyl/grid.hpp"
#include "kpcyl/kernels.hpp"
#include "kpcyl/util.hpp"

namespace kpcyl {

// Real-valued function on the discrete cylinder, stored as the half x-spectrum
// (Hermitian symmetry is structural: row j holds y-mode n(j), column k holds
// x-modes 0..nx/2; the missing k<0 modes are the conjugates of (-n,-k)).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid& grid)
      : grid_(grid), fft_(Fft::get(grid)), coeffs_(grid.spec_size()) {}

  static SpectralField fromPhysical(const std::vector<double>& values, const Grid& grid);
  static SpectralField fromPhysical(const double* values, const Grid& grid);
  std::vector<double> toPhysical() const;
  void toPhysical(double* out) const;

  const Grid& grid() const { return grid_; }
  const Fft& fft() const { return *fft_; }

  cplx* data() { return coeffs_.data(); }
  const cplx* data() const { return coeffs_.data(); }
  std::size_t size() const { return coeffs_.size(); }

  cplx& at(int j, int k) { return coeffs_[std::size_t(j) * grid_.nxh() + k]; }
  const cplx& at(int j, int k) const { return coeffs_[std::size_t(j) * grid_.nxh() + k]; }

  // full-spectrum lookup: any integer k, row index j in [0, ny)
  cplx mode(int j, int k) const {
    if (k >= 0) return at(j, k);
    int jc = (grid_.ny - j) % grid_.ny;
    return std::conj(at(jc, -k));
  }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double a, SpectralField f) { return f *= a; }

  // multiply mode (k, n) by s(xi_k, n); s must satisfy s(-xi,-n) = conj(s(xi,n))
  template <class S>
  void applySymbol(S&& s) {
    for (int j = 0; j < grid_.ny; ++j) {
      int n = grid_.nmode(j);
      for (int k = 0; k < grid_.nxh(); ++k)
        at(j, k) *= s(grid_.xi(k), n);
    }
  }

  void dealias();

  // modulus of the largest k=0 coefficient (the x-mean of each y-mode row)
  double xMeanMagnitude() const;
  double l2() const;  // L2 norm over the cylinder (Parseval)

  bool sameGrid(const SpectralField& o) const { return grid_ == o.grid_; }

 private:
  Grid grid_;
  std::shared_ptr<const Fft> fft_;
  avec<cplx> coeffs_;
};

}  // namespace kpcyl
