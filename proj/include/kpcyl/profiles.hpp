#pragma once

#include <functional>
#include <vector>

#include "kpcyl/field.hpp"

namespace kpcyl {

struct SolitonParams {
  double c = 2.0;      // wave speed parameter, > 0
  double shift = 0.0;  // translation
};

// line-soliton profile phi_c(x) = c sech^2(sqrt(c/2) x) and the kink
// Q_c(x) = sqrt(c/2) tanh(sqrt(c/2) x); phi_c = 2 Q_c'
double phi(double c, double x);
double kinkQ(double c, double x);
double kinkQprime(double c, double x);
double kinkQsecond(double c, double x);
double dkPhi(double c, double x);    // d/dc phi_c(x)
double dkKinkQ(double c, double x);  // d/dc Q_c(x)

// log(cosh(x)) without overflow; used for stable Green-kernel ratios
double logcosh(double x);

// Kink background sampled on the grid as bounded multipliers (never as a
// SpectralField: the kink is not x-periodic). All arrays are phys-layout.
struct KinkBackground {
  double c = 2.0;
  double shift = 0.0;
  std::vector<double> q;       // Q_c(x + shift)
  std::vector<double> qprime;  // Q_c'(x + shift), > 0 everywhere
  std::vector<double> phi;     // phi_c(x + shift) = 2 Q_c'
};

KinkBackground makeKink(const Grid& grid, double c, double shift);

// sample a y-independent profile into a spectral field
SpectralField fieldFromX(const Grid& grid, const std::function<double(double)>& fn);
SpectralField phiField(const Grid& grid, double c, double shift = 0.0);
SpectralField qPrimeField(const Grid& grid, double c, double shift = 0.0);

}  // namespace kpcyl
