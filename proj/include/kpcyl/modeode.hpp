#pragma once

#include <vector>

#include "kpcyl/errors.hpp"
#include "kpcyl/kernels.hpp"

namespace kpcyl {

// One transverse Fourier mode of the linearized Miura operators
//   L   : u' + i n dxinv(u) - 2 Q_c u = f   (differentiated: u'' + inu - 2(Qu)' = f')
//   L_ADJ: -u' + i n dxinv(u) - 2 Q_c u = f  (differentiated: -u'' + inu - 2(Qu)' = f')
// posed on the 1-D x-axis of the cylinder grid.

enum class Variant { L, L_ADJ };

struct XGrid {
  int nx = 512;
  double lx = 32.0;
  double dx() const { return 2.0 * lx / nx; }
  double x(int i) const { return -lx + i * dx(); }
  // wavenumber of full-spectrum index k in [0, nx)
  double xi(int k) const { return M_PI * (k <= nx / 2 ? k : k - nx) / lx; }
};

struct ExponentSet {
  cplx mu_plus, mu_minus;      // Re > 0 for n != 0
  cplx lambda_plus, lambda_minus;  // Re < 0 for n != 0
};

// closed-form growth rates at x -> +-infinity; principal square root (Re >= 0)
ExponentSet exponents(int n, double c, Variant variant);

struct ModeProblem {
  int n = 1;
  double c = 2.0;
  Variant variant = Variant::L;
  XGrid grid;
  std::vector<cplx> rhs;  // f_n sampled on the grid (physical space)
};

enum class ModeBackend {
  SPECTRAL_KRYLOV,  // GMRES on the fixed-point form (default)
  FIXED_POINT,      // plain T_n iteration; contraction only for large |n|
  GREEN_KERNEL      // quadrature against the Green kernel (verification)
};

struct ModeSolution {
  std::vector<cplx> u;
  double h1_norm = 0.0;
  double dxinv_norm = 0.0;
  double bound_constant = 0.0;  // (||u||_H1 + |n| ||dxinv u||) / ||f||
  double residual = 0.0;        // relative residual of the first-order equation
  int iterations = 0;
};

// n = 0 explicit integral formulas. Variant L requires f ⊥ Q'_c (RangeViolation
// otherwise); variant L_ADJ output is normalized ⊥ Q'_c.
inline constexpr double kOrthoTol = 1e-8;
ModeSolution solveMode0(const std::vector<cplx>& f0, const XGrid& grid, double c,
                        Variant variant);

ModeSolution solveModeN(const ModeProblem& p,
                        ModeBackend backend = ModeBackend::SPECTRAL_KRYLOV,
                        double tol = 1e-12, int maxit = 400);

// first-order nonlocal operator applied spectrally (residuals and oracles);
// the k=0 row of the antiderivative is dropped
std::vector<cplx> applyModeOperator(const std::vector<cplx>& u, const XGrid& grid,
                                    int n, double c, Variant variant);

// fundamental solutions of the homogeneous second-order mode ODE on [-X, X],
// integrated by RK4 from the decaying ends inward on a fine grid of step h
struct FundamentalSystem {
  double X = 0.0, h = 0.0;
  std::vector<double> x;
  std::vector<cplx> v, vp;  // decays as x -> -inf
  std::vector<cplx> w, wp;  // decays as x -> +inf
  std::vector<cplx> wronskian;  // v w' - v' w
};
FundamentalSystem fundamentalSystem(int n, double c, Variant variant, double X, double h);

// H1 operator norm of T_n(u) = 2 dx (in +- dx^2)^{-1} (Q_c u), by power iteration
double tnOperatorNorm(int n, double c, const XGrid& grid, Variant variant, int iters = 60);
// smallest n with ||T_n|| <= 1/2 (scan upward; reported, never assumed)
int contractionThreshold(double c, const XGrid& grid, Variant variant, int n_max = 64);

struct GreenKernelFit {
  double rate = 0.0;  // predicted exponential decay rate in |x - t|
  double K = 0.0;     // fitted prefactor: |G_n| <= K exp(-rate |x-t|)
};
GreenKernelFit greenKernelDecay(int n, double c, Variant variant, double window = 10.0);

// 1-D quadrature helpers on the x-grid
double l2NormX(const std::vector<cplx>& u, const XGrid& grid);
cplx innerX(const std::vector<cplx>& a, const std::vector<double>& b, const XGrid& grid);

}  // namespace kpcyl
