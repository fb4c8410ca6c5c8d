#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kpcyl/modeode.hpp"
#include "kpcyl/ops.hpp"
#include "kpcyl/profiles.hpp"

namespace kpcyl {

// linearized Miura operators on the cylinder:
//   L_c  =  dx + dxinv dy - 2 Q_c,   adjoint-variant  -dx + dxinv dy - 2 Q_c
SpectralField applyL(const SpectralField& w, double c);
SpectralField applyLAdj(const SpectralField& w, double c);

struct FullSolveOptions {
  ModeBackend backend = ModeBackend::SPECTRAL_KRYLOV;
  double tol = 1e-12;
  int maxit = 400;
  bool project = false;  // variant L: project rhs onto the range instead of throwing
};

struct FullSolveStats {
  double max_residual = 0.0;
  double max_bound_constant = 0.0;
  std::vector<double> bound_by_mode;  // C(n) for n = 0..ny/2
};

// mode-by-mode inverse; variant L requires f ⊥ phi_c, variant L_ADJ output is
// normalized ⊥ Q'_c (through its n = 0 sector)
SpectralField solveFull(const SpectralField& f, double c, Variant variant,
                        const FullSolveOptions& opt = {},
                        FullSolveStats* stats = nullptr);

struct CoercivityReport {
  Variant variant = Variant::L;
  double c = 2.0;
  int ensemble = 0;
  bool weighted = false;
  double eps = 0.0;
  double min_ratio = 0.0;
  double median_ratio = 0.0;
  std::vector<double> x0_offsets;       // weighted probe only
  std::vector<double> min_ratio_by_x0;  // weighted probe only
};

// min over an ensemble of ||op w|| / ||w||_E (or the chi-weighted pair);
// variant L_ADJ draws are projected off the kernel direction Q'_c first
CoercivityReport coercivityProbe(const Grid& grid, double c, Variant variant,
                                 int ensemble_size,
                                 const std::optional<WeightSpec>& weight = std::nullopt,
                                 std::uint64_t seed = 1);

std::string coercivityReportJson(const CoercivityReport& r);

}  // namespace kpcyl
