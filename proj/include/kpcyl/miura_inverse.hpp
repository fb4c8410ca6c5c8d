#pragma once

#include "kpcyl/linop.hpp"
#include "kpcyl/miura.hpp"

namespace kpcyl {

struct MiuraInverseResult {
  double k = 2.0;        // recovered kink speed
  SpectralField v;       // recovered kink perturbation
  int newton_iters = 0;
  double residual = 0.0;  // ||M+^k(Q_k + v) - (phi_c + u)||_L2
};

inline constexpr double kMiuraInverseDelta = 0.05;

// Solve M+^k(Q_k + v) = phi_c + u near (k, v) = (c, 0): alternating Newton
// with a scalar solve for k (solvability against phi_c) and the L_c inverse
// for v, with step halving on residual increase.
MiuraInverseResult miuraInverse(const SpectralField& u, double c,
                                double delta_inv = kMiuraInverseDelta,
                                double tol = 1e-9, int max_iters = 50);

}  // namespace kpcyl
