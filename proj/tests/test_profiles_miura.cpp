#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kpcyl/miura.hpp"
#include "kpcyl/random_fields.hpp"

using namespace kpcyl;

namespace {

double maxAbs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

TEST_CASE("profile identities: phi = 2 Q', Riccati, derivative consistency") {
  for (double c : {0.5, 1.0, 2.0, 3.7}) {
    double s = std::sqrt(c / 2.0);
    for (double x : {-8.0, -1.3, 0.0, 0.4, 5.0}) {
      CHECK(phi(c, x) == doctest::Approx(2.0 * kinkQprime(c, x)).epsilon(1e-14));
      // Q' = c/2 - Q^2
      CHECK(kinkQprime(c, x) ==
            doctest::Approx(c / 2.0 - kinkQ(c, x) * kinkQ(c, x)).epsilon(1e-13));
      CHECK(kinkQ(c, x) == doctest::Approx(s * std::tanh(s * x)).epsilon(1e-14));
      double h = 1e-5;
      double fd = (kinkQprime(c, x + h) - kinkQprime(c, x - h)) / (2.0 * h);
      CHECK(kinkQsecond(c, x) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("speed-derivative profiles match finite differences in c") {
  double h = 1e-6;
  for (double x : {-4.0, -0.5, 0.0, 2.2}) {
    double fd_phi = (phi(2.0 + h, x) - phi(2.0 - h, x)) / (2.0 * h);
    double fd_q = (kinkQ(2.0 + h, x) - kinkQ(2.0 - h, x)) / (2.0 * h);
    CHECK(dkPhi(2.0, x) == doctest::Approx(fd_phi).epsilon(1e-6));
    CHECK(dkKinkQ(2.0, x) == doctest::Approx(fd_q).epsilon(1e-6));
  }
}

TEST_CASE("logcosh is overflow-safe and accurate") {
  CHECK(logcosh(0.0) == doctest::Approx(0.0));
  CHECK(logcosh(1.0) == doctest::Approx(std::log(std::cosh(1.0))).epsilon(1e-14));
  CHECK(logcosh(-3.0) == doctest::Approx(std::log(std::cosh(3.0))).epsilon(1e-14));
  // far tail: log cosh x ~ |x| - log 2
  CHECK(logcosh(800.0) == doctest::Approx(800.0 - std::log(2.0)).epsilon(1e-14));
  CHECK(std::isfinite(logcosh(1e8)));
}

TEST_CASE("kink background sampling matches pointwise formulas") {
  Grid g(256, 8, 32.0);
  KinkBackground bg = makeKink(g, 2.0, 0.5);
  for (int i : {0, 17, 128, 255}) {
    double x = g.x(i) + 0.5;
    CHECK(bg.q[i] == doctest::Approx(kinkQ(2.0, x)).epsilon(1e-14));
    CHECK(bg.qprime[i] == doctest::Approx(kinkQprime(2.0, x)).epsilon(1e-14));
    CHECK(bg.phi[i] == doctest::Approx(phi(2.0, x)).epsilon(1e-14));
    CHECK(bg.qprime[i] > 0.0);
  }
}

TEST_CASE("Miura composites at w = 0 reproduce the soliton exactly") {
  Grid g(512, 32, 32.0);
  KinkBackground bg = makeKink(g, 2.0, 0.0);
  SpectralField zero(g);
  SpectralField plus_err = miuraPlusKink(bg, zero) - phiField(g, 2.0);
  CHECK(maxAbs(plus_err.toPhysical()) < 1e-12);
  CHECK(maxAbs(miuraMinusKink(bg, zero).toPhysical()) < 1e-12);
}

TEST_CASE("kink composites linearize to the expected operators") {
  // M+(Q + t w) - M+(Q) = t (w_x + dxinv w_y - 2 Q w) + O(t^2)
  Grid g(256, 16, 32.0);
  KinkBackground bg = makeKink(g, 2.0, 0.0);
  RandomFieldSpec rs;
  rs.seed = 3;
  rs.amplitude = 1.0;
  SpectralField w = randomLocalizedField(g, rs);

  double t = 1e-5;
  SpectralField zero(g);
  SpectralField diff = miuraPlusKink(bg, t * w) - miuraPlusKink(bg, zero);
  SpectralField lin = dX(w) + dXinv(dY(w));
  std::vector<double> pw = w.toPhysical();
  std::vector<double> qw(pw.size());
  for (std::size_t i = 0; i < pw.size(); ++i) qw[i] = -2.0 * bg.q[i] * pw[i];
  lin += SpectralField::fromPhysical(qw, g);
  lin.dealias();
  SpectralField err = diff - t * lin;
  CHECK(err.l2() < 5.0 * t * t * w.l2() * w.l2());
}

TEST_CASE("raw Miura maps require zero-x-mean data") {
  Grid g(64, 8, 10.0);
  std::vector<double> p(g.phys_size());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      p[std::size_t(j) * g.nx + i] = std::cos(g.y(j));
  SpectralField f = SpectralField::fromPhysical(p, g);
  CHECK_THROWS_AS(miuraPlusRaw(f, 2.0), ZeroMeanViolation);
}

TEST_CASE("seeded fields are reproducible and refine consistently") {
  RandomFieldSpec rs;
  rs.seed = 11;
  rs.amplitude = 0.05;
  Grid g1(256, 16, 32.0), g2(512, 32, 32.0);
  SpectralField a = randomLocalizedField(g1, rs);
  SpectralField b = randomLocalizedField(g1, rs);
  SpectralField fine = randomLocalizedField(g2, rs);
  CHECK((a - b).l2() == 0.0);
  CHECK(a.l2() == doctest::Approx(0.05).epsilon(1e-10));
  // same continuum function: coarse samples agree with the fine grid's
  std::vector<double> pa = a.toPhysical(), pf = fine.toPhysical();
  double m = 0.0;
  for (int j = 0; j < g1.ny; ++j)
    for (int i = 0; i < g1.nx; ++i)
      m = std::max(m, std::fabs(pa[std::size_t(j) * g1.nx + i] -
                                pf[std::size_t(2 * j) * g2.nx + 2 * i]));
  CHECK(m < 1e-6);
}

TEST_CASE("seeded fields satisfy the flowable-mean and localization gates") {
  Grid g(256, 16, 32.0);
  for (std::uint64_t seed : {1, 2, 9}) {
    RandomFieldSpec rs;
    rs.seed = seed;
    rs.amplitude = 0.05;
    SpectralField f = randomLocalizedField(g, rs);
    CHECK_NOTHROW(requireFlowableXMean(f));
    CHECK_NOTHROW(requireLocalized(f, 1e-6));
    CHECK(eNorm(f).dxinv_available);
  }
}
