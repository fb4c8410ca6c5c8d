#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kpcyl/ops.hpp"
#include "kpcyl/profiles.hpp"

using namespace kpcyl;

namespace {

// smooth localized test function with a handful of x and y modes
SpectralField sampleField(const Grid& g) {
  std::vector<double> p(g.phys_size());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double x = g.x(i), y = g.y(j);
      double env = std::exp(-x * x / 18.0);
      p[std::size_t(j) * g.nx + i] =
          env * (std::sin(M_PI * x / g.lx) * (1.0 + 0.5 * std::cos(y)) +
                 0.3 * std::sin(2.0 * M_PI * x / g.lx) * std::sin(2.0 * y));
    }
  return SpectralField::fromPhysical(p, g);
}

double maxAbs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

TEST_CASE("grid validation rejects bad shapes") {
  CHECK_THROWS_AS(Grid(12, 32, 32.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(100, 32, 32.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(64, 3, 32.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(64, 32, -1.0), std::invalid_argument);
  CHECK_NOTHROW(Grid(16, 4, 1.0));
}

TEST_CASE("physical/spectral round trip is exact to machine precision") {
  Grid g(128, 16, 20.0);
  SpectralField f = sampleField(g);
  std::vector<double> p = f.toPhysical();
  SpectralField f2 = SpectralField::fromPhysical(p, g);
  std::vector<double> p2 = f2.toPhysical();
  double m = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) m = std::max(m, std::fabs(p[i] - p2[i]));
  CHECK(m < 1e-13);
}

TEST_CASE("Parseval: l2() matches physical quadrature") {
  Grid g(128, 16, 20.0);
  SpectralField f = sampleField(g);
  std::vector<double> p = f.toPhysical();
  double s = 0.0;
  for (double v : p) s += v * v;
  double l2_phys = std::sqrt(s * g.dx() * g.dy());
  CHECK(f.l2() == doctest::Approx(l2_phys).epsilon(1e-12));
}

TEST_CASE("dX and dY are exact on single Fourier modes") {
  Grid g(64, 8, 10.0);
  double xi = 3.0 * M_PI / g.lx;
  std::vector<double> p(g.phys_size());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      p[std::size_t(j) * g.nx + i] = std::sin(xi * g.x(i)) * std::cos(2.0 * g.y(j));
  SpectralField f = SpectralField::fromPhysical(p, g);

  std::vector<double> dx_exact(g.phys_size()), dy_exact(g.phys_size());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      dx_exact[std::size_t(j) * g.nx + i] =
          xi * std::cos(xi * g.x(i)) * std::cos(2.0 * g.y(j));
      dy_exact[std::size_t(j) * g.nx + i] =
          -2.0 * std::sin(xi * g.x(i)) * std::sin(2.0 * g.y(j));
    }
  std::vector<double> dx_num = dX(f).toPhysical();
  std::vector<double> dy_num = dY(f).toPhysical();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < dx_num.size(); ++i) {
    mx = std::max(mx, std::fabs(dx_num[i] - dx_exact[i]));
    my = std::max(my, std::fabs(dy_num[i] - dy_exact[i]));
  }
  CHECK(mx < 1e-12);
  CHECK(my < 1e-12);
}

TEST_CASE("dXinv inverts dX on the zero-mean sector") {
  Grid g(128, 16, 20.0);
  SpectralField f = sampleField(g);
  SpectralField err = dXinv(dX(f)) - f;
  // dXinv(dX(f)) loses each row's x-mean; sampleField rows have none beyond roundoff
  CHECK(err.l2() < 1e-11 * std::max(1.0, f.l2()));
}

TEST_CASE("dXinv refuses rows with nonzero x-mean") {
  Grid g(64, 8, 10.0);
  std::vector<double> p(g.phys_size(), 0.0);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      p[std::size_t(j) * g.nx + i] = std::cos(g.y(j));  // constant in x, n = 1 row
  SpectralField f = SpectralField::fromPhysical(p, g);
  CHECK_THROWS_AS(dXinv(f), ZeroMeanViolation);
}

TEST_CASE("dealias zeroes exactly the top third of modes") {
  Grid g(64, 16, 10.0);
  SpectralField f(g);
  for (int j = 0; j < g.ny; ++j)
    for (int k = 0; k < g.nxh(); ++k) f.at(j, k) = cplx(1.0, 0.0);
  f.dealias();
  for (int j = 0; j < g.ny; ++j)
    for (int k = 0; k < g.nxh(); ++k) {
      bool keep = g.dealias_keep(k, g.nmode(j));
      CHECK(std::abs(f.at(j, k)) == (keep ? 1.0 : 0.0));
    }
}

TEST_CASE("multiply computes the dealiased pointwise product") {
  Grid g(128, 16, 20.0);
  SpectralField a = sampleField(g);
  SpectralField b = phiField(g, 2.0);
  SpectralField ab = multiply(a, b);

  std::vector<double> pa = a.toPhysical(), pb = b.toPhysical();
  std::vector<double> prod(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i) prod[i] = pa[i] * pb[i];
  SpectralField ref = SpectralField::fromPhysical(prod, g);
  ref.dealias();
  SpectralField err = ab - ref;
  // identical up to roundoff when both inputs are already in the kept band
  SpectralField a2 = a, b2 = b;
  a2.dealias();
  b2.dealias();
  SpectralField ab2 = multiply(a2, b2);
  std::vector<double> q2 = a2.toPhysical(), r2 = b2.toPhysical();
  for (std::size_t i = 0; i < q2.size(); ++i) prod[i] = q2[i] * r2[i];
  SpectralField ref2 = SpectralField::fromPhysical(prod, g);
  ref2.dealias();
  CHECK((ab2 - ref2).l2() < 1e-13);
  CHECK(err.l2() < 1e-13);
}

TEST_CASE("shiftX translates by a grid-commensurate offset exactly") {
  Grid g(128, 8, 16.0);
  SpectralField f = sampleField(g);
  double a = 4.0 * g.dx();
  std::vector<double> p = f.toPhysical();
  std::vector<double> sh = shiftX(f, a).toPhysical();
  double m = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      int src = (i - 4 + g.nx) % g.nx;  // f(x - a) with a = 4 dx
      m = std::max(m, std::fabs(sh[std::size_t(j) * g.nx + i] -
                                p[std::size_t(j) * g.nx + src]));
    }
  CHECK(m < 1e-12);
}

TEST_CASE("eNorm components match explicit operator norms") {
  Grid g(128, 16, 20.0);
  SpectralField f = sampleField(g);
  EnormBreakdown e = eNorm(f);
  CHECK(e.dxinv_available);
  CHECK(e.l2 == doctest::Approx(f.l2()).epsilon(1e-12));
  CHECK(e.dx == doctest::Approx(dX(f).l2()).epsilon(1e-12));
  CHECK(e.dxinv_dy == doctest::Approx(dXinv(dY(f)).l2()).epsilon(1e-12));
  double tot = std::sqrt(e.l2 * e.l2 + e.dx * e.dx + e.dxinv_dy * e.dxinv_dy);
  CHECK(e.e_total == doctest::Approx(tot).epsilon(1e-12));
}

TEST_CASE("quadrature integrates trig polynomials exactly") {
  Grid g(64, 8, 10.0);
  std::vector<double> p(g.phys_size());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      p[std::size_t(j) * g.nx + i] =
          1.0 + std::cos(M_PI * g.x(i) / g.lx) * std::cos(g.y(j));
  // integral of 1 over the cylinder plus a mean-zero mode
  CHECK(quadrature(g, p) == doctest::Approx(2.0 * g.lx * 2.0 * M_PI).epsilon(1e-13));
}

TEST_CASE("sigmoid weight identities") {
  for (double eps : {0.05, 0.1, 0.5}) {
    for (double x : {-30.0, -3.0, 0.0, 1.7, 25.0}) {
      CHECK(chi(eps, x) == doctest::Approx((1.0 + std::tanh(eps * x)) / 2.0).epsilon(1e-14));
      double h = 1e-5;
      double fd = (chi(eps, x + h) - chi(eps, x - h)) / (2.0 * h);
      CHECK(chiPrime(eps, x) == doctest::Approx(fd).epsilon(1e-7));
      CHECK(chiPrime(eps, x) > 0.0);
    }
  }
}

TEST_CASE("localization gate passes compact data and flags seam mass") {
  Grid g(128, 8, 20.0);
  SpectralField f = sampleField(g);
  CHECK_NOTHROW(requireLocalized(f, 1e-4));

  std::vector<double> p(g.phys_size());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double x = g.x(i);
      p[std::size_t(j) * g.nx + i] = std::exp(-std::pow((std::fabs(x) - g.lx) / 1.5, 2));
    }
  SpectralField seam = SpectralField::fromPhysical(p, g);
  CHECK_THROWS_AS(requireLocalized(seam, 1e-4), BufferViolation);
}
