#pragma once

#include "kpcyl/ops.hpp"
#include "kpcyl/profiles.hpp"

namespace kpcyl {

// Miura maps M_c^{\pm}(v) = \pm v_x + dxinv(v_y) - v^2 + c/2 for periodic,
// localized v. The raw forms require zero x-mean rows (for the
// anti-derivative); callers feeding a kink background must use the *Kink
// composites below, which absorb the non-periodic part in closed form.
SpectralField miuraPlusRaw(const SpectralField& v, double c);
SpectralField miuraMinusRaw(const SpectralField& v, double c);

// M_c^+(Q + w) = phi + w_x + dxinv(w_y) - 2 Q w - w^2. loc_tol bounds the
// fraction of the E-mass of w allowed in the seam buffer; diagnostics along a
// flow pass a lenient bound, since dispersed radiation wraps the domain
SpectralField miuraPlusKink(const KinkBackground& bg, const SpectralField& w,
                            double loc_tol = kBufferTol);
// M_c^-(Q + w) = -w_x + dxinv(w_y) - 2 Q w - w^2
SpectralField miuraMinusKink(const KinkBackground& bg, const SpectralField& w,
                             double loc_tol = kBufferTol);

}  // namespace kpcyl
