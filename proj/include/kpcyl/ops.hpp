#pragma once

#include <optional>
#include <vector>

#include "kpcyl/errors.hpp"
#include "kpcyl/field.hpp"

namespace kpcyl {

// Components of the anisotropic energy norm. When the anti-derivative gate
// fails for some y-mode the dxinv_dy component is reported unavailable and
// excluded from e_total (never silently zeroed).
struct EnormBreakdown {
  double l2 = 0.0;
  double dx = 0.0;
  double dxinv_dy = 0.0;
  double e_total = 0.0;
  bool dxinv_available = true;
};

// Sigmoid weight chi_eps(x + x0) = (1 + tanh(eps*(x + x0)))/2.
struct WeightSpec {
  double eps = 0.1;
  double x0 = 0.0;
};

double chi(double eps, double x);
double chiPrime(double eps, double x);
double chiTriplePrime(double eps, double x);

inline constexpr double kZeroMeanTol = 1e-10;

// spectral derivative/anti-derivative operators
SpectralField dX(const SpectralField& f);
SpectralField dY(const SpectralField& f);
SpectralField dXinv(const SpectralField& f, double tol = kZeroMeanTol);
void requireZeroXMean(const SpectralField& f, double tol = kZeroMeanTol);
// evolution only feeds the n != 0 rows through the x-antiderivative; the
// global (n = 0) x-mean is a conserved parameter and may be nonzero
void requireFlowableXMean(const SpectralField& f, double tol = kZeroMeanTol);
bool hasZeroXMean(const SpectralField& f, double tol = kZeroMeanTol);

// dealiased pointwise products
SpectralField multiply(const SpectralField& a, const SpectralField& b);
SpectralField multiplyPhys(const SpectralField& a, const std::vector<double>& b_phys);

// g(x, y) = f(x - a, y), by Fourier phase (exact for grid-commensurate a)
SpectralField shiftX(const SpectralField& f, double a);

double l2Inner(const SpectralField& a, const SpectralField& b);

EnormBreakdown eNorm(const SpectralField& f);
EnormBreakdown weightedENorm(const SpectralField& f, const WeightSpec& w);

double lpNorm(const SpectralField& f, double p);
// ||u||_Lp divided by the unconstanted anisotropic-Sobolev product
double sobolevRatio(const SpectralField& f, double p);

// physical-space quadrature over the cylinder (exact for trig polynomials)
double quadrature(const Grid& grid, const std::vector<double>& values);
std::vector<double> chiSamples(const Grid& grid, const WeightSpec& w);
std::vector<double> chiPrimeSamples(const Grid& grid, const WeightSpec& w);

// fraction of the E-norm mass in the outer 10% of the x-domain
double bufferEnormFraction(const SpectralField& f);
inline constexpr double kBufferTol = 1e-8;
void requireLocalized(const SpectralField& f, double tol = kBufferTol);

}  // namespace kpcyl
