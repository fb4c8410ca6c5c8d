#pragma once

#include "kpcyl/evolve.hpp"

namespace kpcyl {

// weighted mass I(u) = integral of u^2 chi_eps(x + x0)
double weightedMass(const SpectralField& u, const WeightSpec& w);

// local mass balance along a KP-II run with the moving weight
// phi(t,x) = chi_eps(x + x0 - c1 t):
//   d/dt int u^2 phi = int (-3 u_x^2 - 3 (dxinv u_y)^2 - 4 u^3) phi'
//                    + int u^2 (phi''' - c1 phi')
struct KatoSeries {
  std::vector<double> times;
  std::vector<double> mass;      // I(t)
  std::vector<double> lhs_rate;  // finite-difference d/dt of mass
  std::vector<double> rhs;       // identity right side
  std::vector<double> residual;  // lhs_rate - rhs
  double max_rel_residual = 0.0; // max |residual| / max |rhs|
};

KatoSeries katoBalance(const SpectralField& u0, const FlowSpec& spec,
                       const WeightSpec& weight, double c1);

struct MonotonicityResult {
  std::vector<double> times;
  std::vector<double> mass;          // weighted mass under the moving window
  double max_increment = 0.0;        // largest single-step increase
  double final_over_initial = 0.0;
};

inline constexpr double kMonotonicityDelta = 0.05;

MonotonicityResult monotonicityProbe(const SpectralField& u0, const WeightSpec& weight,
                                     double c1, const FlowSpec& spec,
                                     double delta = kMonotonicityDelta);

// 4th-order derivative of a uniformly sampled series (one-sided at the ends)
std::vector<double> differentiateSeries(const std::vector<double>& v, double h);

}  // namespace kpcyl
