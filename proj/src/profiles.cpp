#include "kpcyl/profiles.hpp"

#include <cmath>

namespace kpcyl {

namespace {
double sech(double x) { return 1.0 / std::cosh(x); }
}  // namespace

double phi(double c, double x) {
  double s = sech(std::sqrt(c / 2.0) * x);
  return c * s * s;
}

double kinkQ(double c, double x) {
  double q = std::sqrt(c / 2.0);
  return q * std::tanh(q * x);
}

double kinkQprime(double c, double x) {
  return 0.5 * phi(c, x);
}

double kinkQsecond(double c, double x) {
  double q = std::sqrt(c / 2.0);
  double s = sech(q * x);
  return -c * q * s * s * std::tanh(q * x);
}

double dkPhi(double c, double x) {
  double s = std::sqrt(c / 2.0);
  double se = sech(s * x);
  // d/dc [c sech^2(sx)] with ds/dc = 1/(4s)
  return se * se * (1.0 - 0.5 * c * x / s * std::tanh(s * x));
}

double dkKinkQ(double c, double x) {
  double s = std::sqrt(c / 2.0);
  double se = sech(s * x);
  // d/dc [s tanh(sx)] with ds/dc = 1/(4s)
  return (std::tanh(s * x) + s * x * se * se) / (4.0 * s);
}

double logcosh(double x) {
  double a = std::fabs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - M_LN2;
}

KinkBackground makeKink(const Grid& grid, double c, double shift) {
  KinkBackground bg;
  bg.c = c;
  bg.shift = shift;
  bg.q.resize(grid.phys_size());
  bg.qprime.resize(grid.phys_size());
  bg.phi.resize(grid.phys_size());
  for (int i = 0; i < grid.nx; ++i) {
    double x = grid.x(i) + shift;
    double q = kinkQ(c, x);
    double qp = kinkQprime(c, x);
    for (int j = 0; j < grid.ny; ++j) {
      std::size_t idx = std::size_t(j) * grid.nx + i;
      bg.q[idx] = q;
      bg.qprime[idx] = qp;
      bg.phi[idx] = 2.0 * qp;
    }
  }
  return bg;
}

SpectralField fieldFromX(const Grid& grid, const std::function<double(double)>& fn) {
  std::vector<double> p(grid.phys_size());
  for (int i = 0; i < grid.nx; ++i) {
    double v = fn(grid.x(i));
    for (int j = 0; j < grid.ny; ++j) p[std::size_t(j) * grid.nx + i] = v;
  }
  return SpectralField::fromPhysical(p, grid);
}

SpectralField phiField(const Grid& grid, double c, double shift) {
  return fieldFromX(grid, [c, shift](double x) { return phi(c, x + shift); });
}

SpectralField qPrimeField(const Grid& grid, double c, double shift) {
  return fieldFromX(grid, [c, shift](double x) { return kinkQprime(c, x + shift); });
}

}  // namespace kpcyl
