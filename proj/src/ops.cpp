#include "kpcyl/ops.hpp"

#include <cmath>

#include "kpcyl/kernels.hpp"

namespace kpcyl {

double chi(double eps, double x) { return 0.5 * (1.0 + std::tanh(eps * x)); }

double chiPrime(double eps, double x) {
  double c = std::cosh(eps * x);
  return 0.5 * eps / (c * c);
}

double chiTriplePrime(double eps, double x) {
  double t = std::tanh(eps * x);
  double sech2 = 1.0 - t * t;
  return eps * eps * eps * sech2 * (2.0 * t * t - sech2);
}

SpectralField dX(const SpectralField& f) {
  SpectralField g = f;
  g.applySymbol([](double xi, int) { return cplx(0.0, xi); });
  return g;
}

SpectralField dY(const SpectralField& f) {
  SpectralField g = f;
  g.applySymbol([](double, int n) { return cplx(0.0, double(n)); });
  return g;
}

bool hasZeroXMean(const SpectralField& f, double tol) {
  double scale = f.l2() / std::sqrt(4.0 * M_PI * f.grid().lx);
  return f.xMeanMagnitude() <= tol * std::max(scale, 1e-300);
}

void requireZeroXMean(const SpectralField& f, double tol) {
  if (!hasZeroXMean(f, tol))
    throw ZeroMeanViolation("field carries k=0 content; periodic x-antiderivative undefined");
}

void requireFlowableXMean(const SpectralField& f, double tol) {
  const Grid& grid = f.grid();
  double m = 0.0;
  for (int j = 1; j < grid.ny; ++j) m = std::max(m, std::abs(f.at(j, 0)));
  double scale = f.l2() / std::sqrt(4.0 * M_PI * grid.lx);
  if (m > tol * std::max(scale, 1e-300))
    throw ZeroMeanViolation("field carries k=0 content in n != 0 rows; flow undefined");
}

SpectralField dXinv(const SpectralField& f, double tol) {
  requireZeroXMean(f, tol);
  SpectralField g = f;
  g.applySymbol([](double xi, int) { return xi == 0.0 ? cplx(0.0) : cplx(0.0, -1.0 / xi); });
  return g;
}

SpectralField multiply(const SpectralField& a, const SpectralField& b) {
  const Grid& grid = a.grid();
  std::vector<double> pa = a.toPhysical();
  std::vector<double> pb = b.toPhysical();
  kernels().rmul(pa.data(), pa.data(), pb.data(), pa.size());
  SpectralField g = SpectralField::fromPhysical(pa, grid);
  g.dealias();
  return g;
}

SpectralField multiplyPhys(const SpectralField& a, const std::vector<double>& b_phys) {
  std::vector<double> pa = a.toPhysical();
  kernels().rmul(pa.data(), pa.data(), b_phys.data(), pa.size());
  SpectralField g = SpectralField::fromPhysical(pa, a.grid());
  g.dealias();
  return g;
}

SpectralField shiftX(const SpectralField& f, double a) {
  SpectralField g = f;
  g.applySymbol([a](double xi, int) { return std::exp(cplx(0.0, -xi * a)); });
  return g;
}

double l2Inner(const SpectralField& a, const SpectralField& b) {
  const Grid& grid = a.grid();
  double s = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int k = 0; k < grid.nxh(); ++k) {
      double w = (k == 0 || k == grid.nx / 2) ? 1.0 : 2.0;
      s += w * (a.at(j, k).real() * b.at(j, k).real() +
                a.at(j, k).imag() * b.at(j, k).imag());
    }
  }
  return s * (2.0 * grid.lx) * (2.0 * M_PI);
}

EnormBreakdown eNorm(const SpectralField& f) {
  const Grid& grid = f.grid();
  EnormBreakdown r;
  r.dxinv_available = hasZeroXMean(f);
  double s_l2 = 0.0, s_dx = 0.0, s_iy = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    int n = grid.nmode(j);
    for (int k = 0; k < grid.nxh(); ++k) {
      double w = (k == 0 || k == grid.nx / 2) ? 1.0 : 2.0;
      double m = std::norm(f.at(j, k));
      double xi = grid.xi(k);
      s_l2 += w * m;
      s_dx += w * xi * xi * m;
      if (k > 0) s_iy += w * (double(n) * n) / (xi * xi) * m;
    }
  }
  double area = (2.0 * grid.lx) * (2.0 * M_PI);
  r.l2 = std::sqrt(s_l2 * area);
  r.dx = std::sqrt(s_dx * area);
  r.dxinv_dy = r.dxinv_available ? std::sqrt(s_iy * area) : 0.0;
  double tot = r.l2 * r.l2 + r.dx * r.dx;
  if (r.dxinv_available) tot += r.dxinv_dy * r.dxinv_dy;
  r.e_total = std::sqrt(tot);
  return r;
}

std::vector<double> chiSamples(const Grid& grid, const WeightSpec& w) {
  std::vector<double> out(grid.phys_size());
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      out[std::size_t(j) * grid.nx + i] = chi(w.eps, grid.x(i) + w.x0);
  return out;
}

std::vector<double> chiPrimeSamples(const Grid& grid, const WeightSpec& w) {
  std::vector<double> out(grid.phys_size());
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      out[std::size_t(j) * grid.nx + i] = chiPrime(w.eps, grid.x(i) + w.x0);
  return out;
}

double quadrature(const Grid& grid, const std::vector<double>& values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.dx() * grid.dy();
}

EnormBreakdown weightedENorm(const SpectralField& f, const WeightSpec& w) {
  const Grid& grid = f.grid();
  EnormBreakdown r;
  r.dxinv_available = hasZeroXMean(f);
  std::vector<double> cw = chiSamples(grid, w);
  double cell = grid.dx() * grid.dy();
  auto wnorm = [&](const SpectralField& g) {
    std::vector<double> p = g.toPhysical();
    return std::sqrt(kernels().rwsumsq(cw.data(), p.data(), p.size()) * cell);
  };
  r.l2 = wnorm(f);
  r.dx = wnorm(dX(f));
  r.dxinv_dy = r.dxinv_available ? wnorm(dXinv(dY(f))) : 0.0;
  double tot = r.l2 * r.l2 + r.dx * r.dx;
  if (r.dxinv_available) tot += r.dxinv_dy * r.dxinv_dy;
  r.e_total = std::sqrt(tot);
  return r;
}

double lpNorm(const SpectralField& f, double p) {
  std::vector<double> v = f.toPhysical();
  double s = 0.0;
  for (double x : v) s += std::pow(std::fabs(x), p);
  return std::pow(s * f.grid().dx() * f.grid().dy(), 1.0 / p);
}

double sobolevRatio(const SpectralField& f, double p) {
  if (p < 2.0 || p > 6.0) throw std::invalid_argument("sobolevRatio: p must be in [2,6]");
  double lp = lpNorm(f, p);
  EnormBreakdown e = eNorm(f);
  double e1 = (6.0 - p) / (2.0 * p);
  double e2 = (p - 2.0) / p;
  double e3 = (p - 2.0) / (2.0 * p);
  auto need = [&](double val, double expo) {
    if (expo > 0.0 && val == 0.0)
      throw DegenerateField("sobolevRatio: vanishing norm factor with positive exponent");
    return expo == 0.0 ? 1.0 : std::pow(val, expo);
  };
  if (p > 2.0 && !e.dxinv_available)
    throw DegenerateField("sobolevRatio: dxinv_dy component unavailable");
  if (lp == 0.0) return 0.0;
  return lp / (need(e.l2, e1) * need(e.dx, e2) * need(e.dxinv_dy, e3));
}

double bufferEnormFraction(const SpectralField& f) {
  const Grid& grid = f.grid();
  double inner_limit = 0.9 * grid.lx;
  std::vector<double> mask(grid.phys_size());
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      mask[std::size_t(j) * grid.nx + i] = std::fabs(grid.x(i)) >= inner_limit ? 1.0 : 0.0;

  double outer = 0.0, total = 0.0;
  auto add = [&](const SpectralField& g) {
    std::vector<double> p = g.toPhysical();
    outer += kernels().rwsumsq(mask.data(), p.data(), p.size());
    total += kernels().rsumsq(p.data(), p.size());
  };
  add(f);
  add(dX(f));
  if (hasZeroXMean(f)) add(dXinv(dY(f)));
  if (total == 0.0) return 0.0;
  return outer / total;
}

void requireLocalized(const SpectralField& f, double tol) {
  if (bufferEnormFraction(f) >= tol)
    throw BufferViolation("field is not localized away from the periodic seam");
}

}  // namespace kpcyl
