#pragma once

#include "kpcyl/ops.hpp"
#include "kpcyl/profiles.hpp"

namespace kpcyl {

struct ModulationState {
  double gamma = 0.0;
  double gamma_rate = 0.0;  // filled by callers differencing over time
  SpectralField w;          // perturbation about Q_c(. + gamma)
  double ortho_residual = 0.0;  // |(w, Q'_c(. + gamma))| / (||w|| ||Q'_c||)
  int iterations = 0;
};

// Decompose v = Q_c(. + background_shift) + w_raw as Q_c(. + gamma) + w with
// (w, Q'_c(. + gamma)) = 0, by damped Newton in gamma. The kink enters only
// through localized differences Q_c(. + s) - Q_c(. + gamma), so everything
// stays representable on the periodic grid.
ModulationState modulationDecompose(const SpectralField& w_raw, double c,
                                    double background_shift, double gamma_guess,
                                    double tube_radius_factor = 0.5,
                                    int max_iters = 25);

}  // namespace kpcyl
