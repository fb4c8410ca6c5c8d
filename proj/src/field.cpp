#include "kpcyl/field.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace kpcyl {

SpectralField SpectralField::fromPhysical(const std::vector<double>& values, const Grid& grid) {
  if (values.size() != grid.phys_size())
    throw std::invalid_argument("fromPhysical: size mismatch with grid");
  return fromPhysical(values.data(), grid);
}

SpectralField SpectralField::fromPhysical(const double* values, const Grid& grid) {
  SpectralField f(grid);
  f.fft_->forward2d(values, f.coeffs_.data());
  return f;
}

std::vector<double> SpectralField::toPhysical() const {
  std::vector<double> out(grid_.phys_size());
  toPhysical(out.data());
  return out;
}

void SpectralField::toPhysical(double* out) const {
  avec<cplx> scratch(coeffs_);  // c2r clobbers its input
  fft_->backward2d(scratch.data(), out);
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  assert(sameGrid(o));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  assert(sameGrid(o));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : coeffs_) c *= a;
  return *this;
}

void SpectralField::dealias() {
  for (int j = 0; j < grid_.ny; ++j) {
    int n = grid_.nmode(j);
    for (int k = 0; k < grid_.nxh(); ++k)
      if (!grid_.dealias_keep(k, n)) at(j, k) = 0.0;
  }
}

double SpectralField::xMeanMagnitude() const {
  double m = 0.0;
  for (int j = 0; j < grid_.ny; ++j) m = std::max(m, std::abs(at(j, 0)));
  return m;
}

double SpectralField::l2() const {
  // Parseval with the r2c half-spectrum: interior columns count twice.
  double s = 0.0;
  for (int j = 0; j < grid_.ny; ++j) {
    for (int k = 0; k < grid_.nxh(); ++k) {
      double w = (k == 0 || k == grid_.nx / 2) ? 1.0 : 2.0;
      s += w * std::norm(at(j, k));
    }
  }
  return std::sqrt(s * (2.0 * grid_.lx) * (2.0 * M_PI));
}

}  // namespace kpcyl
