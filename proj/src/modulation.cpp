#include "kpcyl/modulation.hpp"

#include <cmath>

namespace kpcyl {

namespace {

// w(gamma) = w_raw + Q_c(. + s0) - Q_c(. + gamma); the kink difference is
// exponentially localized, so it lives on the periodic grid
SpectralField assemble(const SpectralField& w_raw, double c, double s0, double gamma) {
  if (s0 == gamma) return w_raw;
  SpectralField diff = fieldFromX(
      w_raw.grid(), [&](double x) { return kinkQ(c, x + s0) - kinkQ(c, x + gamma); });
  return w_raw + diff;
}

}  // namespace

ModulationState modulationDecompose(const SpectralField& w_raw, double c,
                                    double background_shift, double gamma_guess,
                                    double tube_radius_factor, int max_iters) {
  const Grid& grid = w_raw.grid();
  SpectralField qp0 = qPrimeField(grid, c);
  double qp_norm = qp0.l2();
  if (eNorm(w_raw).e_total > tube_radius_factor * qp_norm)
    throw OutOfTube("modulationDecompose: perturbation outside the tubular neighborhood");

  auto qpField = [&](double g) { return qPrimeField(grid, c, g); };
  auto qppField = [&](double g) {
    return fieldFromX(grid, [&](double x) { return kinkQsecond(c, x + g); });
  };

  double gamma = gamma_guess;
  SpectralField w = assemble(w_raw, c, background_shift, gamma);
  double g = l2Inner(w, qpField(gamma));

  ModulationState st;
  const double tol = 1e-8;
  auto residual = [&](const SpectralField& wf, double gv) {
    double wn = wf.l2();
    return wn > 0.0 ? std::fabs(gv) / (wn * qp_norm) : 0.0;
  };

  int it = 0;
  for (; it < max_iters; ++it) {
    if (residual(w, g) <= tol) break;
    double gprime = -qp_norm * qp_norm + l2Inner(w, qppField(gamma));
    if (gprime == 0.0) throw OutOfTube("modulationDecompose: singular Newton derivative");
    double step = -g / gprime;
    double next_gamma = gamma, next_g = g;
    SpectralField next_w;
    bool accepted = false;
    for (int halve = 0; halve <= 5; ++halve) {
      next_gamma = gamma + step;
      next_w = assemble(w_raw, c, background_shift, next_gamma);
      next_g = l2Inner(next_w, qpField(next_gamma));
      if (std::fabs(next_g) < std::fabs(g) || residual(next_w, next_g) <= tol) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) throw OutOfTube("modulationDecompose: Newton step failed to reduce the residual");
    gamma = next_gamma;
    w = next_w;
    g = next_g;
  }
  st.ortho_residual = residual(w, g);
  if (st.ortho_residual > tol)
    throw OutOfTube("modulationDecompose: orthogonality residual floor not reached");
  st.gamma = gamma;
  st.w = w;
  st.iterations = it;
  return st;
}

}  // namespace kpcyl
