#include "kpcyl/random_fields.hpp"

#include "kpcyl/ops.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace kpcyl {

SpectralField randomLocalizedField(const Grid& grid, const RandomFieldSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  std::normal_distribution<double> gauss(0.0, 1.0);

  struct Term {
    double a, kx, thx, thy;
    int n;
  };
  std::vector<Term> terms;
  for (int k = 1; k <= spec.kx_modes; ++k) {
    for (int n = 0; n <= spec.ky_modes; ++n) {
      Term t;
      t.a = gauss(rng) / (1.0 + k + n);  // mild spectral rolloff
      t.kx = k * M_PI / grid.lx;
      t.thx = phase(rng);
      t.thy = phase(rng);
      t.n = n;
      terms.push_back(t);
    }
  }

  // The field is built as an x-derivative of a windowed potential whose
  // x-profiles all integrate to zero: that keeps the field and its
  // dx^{-1} dy partner localized inside the window (a nonzero row integral
  // of the potential would smear a constant offset into the seam buffer).
  double half_support = 0.4 * grid.lx;  // window concentrates on the inner 80%
  std::vector<double> window(grid.nx);
  double wsum = 0.0;
  for (int i = 0; i < grid.nx; ++i) {
    double r = grid.x(i) / half_support;
    window[i] = std::exp(-std::pow(r, 8));
    wsum += window[i];
  }
  std::vector<std::vector<double>> prof(terms.size(), std::vector<double>(grid.nx));
  for (std::size_t t = 0; t < terms.size(); ++t) {
    double csum = 0.0;
    for (int i = 0; i < grid.nx; ++i) {
      prof[t][i] = std::cos(terms[t].kx * grid.x(i) + terms[t].thx) * window[i];
      csum += prof[t][i];
    }
    for (int i = 0; i < grid.nx; ++i) prof[t][i] -= csum / wsum * window[i];
  }

  std::vector<double> p(grid.phys_size());
  for (int j = 0; j < grid.ny; ++j) {
    double y = grid.y(j);
    for (std::size_t t = 0; t < terms.size(); ++t) {
      double cy = terms[t].a * std::cos(terms[t].n * y + terms[t].thy);
      for (int i = 0; i < grid.nx; ++i)
        p[std::size_t(j) * grid.nx + i] += cy * prof[t][i];
    }
  }

  SpectralField f = dX(SpectralField::fromPhysical(p, grid));
  f.dealias();

  double scale = spec.norm == RandomFieldSpec::Norm::L2 ? f.l2() : eNorm(f).e_total;
  if (scale > 0.0) f *= spec.amplitude / scale;
  return f;
}

}  // namespace kpcyl
