#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace kpcyl {

// Discrete cylinder [-lx, lx) x [0, 2pi). x is a long periodic interval
// standing in for the real line; the y-period is fixed at 2pi.
struct Grid {
  int nx = 512;                  // x modes, power of two, >= 16
  int ny = 32;                   // y modes, power of two, >= 4
  double lx = 32.0;              // x half-period
  double dealias_fraction = 2.0 / 3.0;

  Grid() = default;
  Grid(int nx_, int ny_, double lx_, double dealias = 2.0 / 3.0)
      : nx(nx_), ny(ny_), lx(lx_), dealias_fraction(dealias) {
    validate();
  }

  void validate() const {
    auto pow2 = [](int v) { return v > 0 && (v & (v - 1)) == 0; };
    if (nx < 16 || !pow2(nx)) throw std::invalid_argument("Grid: nx must be a power of two >= 16");
    if (ny < 4 || !pow2(ny)) throw std::invalid_argument("Grid: ny must be a power of two >= 4");
    if (!(lx > 0)) throw std::invalid_argument("Grid: lx must be positive");
    if (!(dealias_fraction > 0) || dealias_fraction > 1.0)
      throw std::invalid_argument("Grid: dealias_fraction must be in (0,1]");
  }

  double dx() const { return 2.0 * lx / nx; }
  double dy() const { return 2.0 * M_PI / ny; }
  double x(int i) const { return -lx + i * dx(); }
  double y(int j) const { return j * dy(); }

  // physical wavenumber of x-mode index k (k in [0, nx/2])
  double xi(int k) const { return M_PI * k / lx; }
  // wrapped y-mode index: row j of the spectrum holds n(j)
  int nmode(int j) const { return j <= ny / 2 ? j : j - ny; }

  int nxh() const { return nx / 2 + 1; }          // stored x-modes (r2c)
  std::size_t spec_size() const { return std::size_t(ny) * nxh(); }
  std::size_t phys_size() const { return std::size_t(ny) * nx; }

  bool dealias_keep(int k, int n) const {
    return k <= dealias_fraction * (nx / 2) && std::abs(n) <= dealias_fraction * (ny / 2);
  }

  bool operator==(const Grid& o) const {
    return nx == o.nx && ny == o.ny && lx == o.lx && dealias_fraction == o.dealias_fraction;
  }
};

}  // namespace kpcyl
