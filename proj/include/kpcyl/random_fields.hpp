#pragma once

#include <cstdint>

#include "kpcyl/ops.hpp"

namespace kpcyl {

// Seeded smooth localized perturbations. The recipe is a fixed continuum
// function of the seed (a low-mode trigonometric sum under a compactly
// concentrated window), sampled on whatever grid is requested, so the same
// seed yields the same function across grid refinements.
struct RandomFieldSpec {
  std::uint64_t seed = 1;
  double amplitude = 0.05;  // target norm after scaling
  enum class Norm { L2, E } norm = Norm::L2;
  int kx_modes = 8;  // x-modes 1..kx_modes (fractions of pi/lx)
  int ky_modes = 3;  // y-modes 0..ky_modes
};

SpectralField randomLocalizedField(const Grid& grid, const RandomFieldSpec& spec);

}  // namespace kpcyl
