#include "kpcyl/evolve.hpp"

#include <cmath>
#include <complex>

#include "kpcyl/errors.hpp"
#include "kpcyl/kernels.hpp"

namespace kpcyl {

namespace {

constexpr double kStabilityBudget = 1000.0;  // max |symbol| * dt

// dispersion of the integrated KP-II flow; k=0 annihilation convention
cplx kp2Symbol(double xi, int n) {
  if (xi == 0.0) return cplx(0.0);
  return cplx(0.0, xi * xi * xi - 3.0 * double(n) * n / xi);
}

// same flow seen from the frame moving with the kink (zeta = x + ct)
cplx mkp2Symbol(double xi, int n, double c) {
  if (xi == 0.0) return cplx(0.0);
  return cplx(0.0, xi * xi * xi - 3.0 * double(n) * n / xi + 2.0 * c * xi);
}

double maxSymbol(const Grid& grid, const FlowSpec& spec) {
  double m = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    int n = grid.nmode(j);
    for (int k = 1; k < grid.nxh(); ++k) {
      cplx s = spec.equation == Equation::KP2 ? kp2Symbol(grid.xi(k), n)
                                              : mkp2Symbol(grid.xi(k), n, spec.c);
      m = std::max(m, std::abs(s));
    }
  }
  return m;
}

// zero the k=0 row; returns the largest modulus removed
double annihilateK0(SpectralField& f) {
  double m = 0.0;
  for (int j = 0; j < f.grid().ny; ++j) {
    m = std::max(m, std::abs(f.at(j, 0)));
    f.at(j, 0) = cplx(0.0);
  }
  return m;
}

// nonlinear part of the KP-II RHS: -3 d/dx (u^2)
SpectralField kp2Nonlinear(const SpectralField& u) {
  std::vector<double> p = u.toPhysical();
  kernels().rsquare(p.data(), p.data(), p.size());
  SpectralField g = SpectralField::fromPhysical(p, u.grid());
  g.dealias();
  g.applySymbol([](double xi, int) { return cplx(0.0, -3.0 * xi); });
  return g;
}

// nonlinear + variable-coefficient part of the moving-frame perturbation RHS:
//   d/dz (2W^3 + 6 Q W^2 - 3 phi W) - 6 (W_z + Q') * dzinv(W_y)
SpectralField mkp2Nonlinear(const SpectralField& w, const KinkBackground& bg,
                            double* k0_injection) {
  const Grid& grid = w.grid();
  std::vector<double> pw = w.toPhysical();

  std::vector<double> a(pw.size());
  for (std::size_t i = 0; i < pw.size(); ++i)
    a[i] = pw[i] * (2.0 * pw[i] * pw[i] + 6.0 * bg.q[i] * pw[i] - 3.0 * bg.phi[i]);
  SpectralField fa = SpectralField::fromPhysical(a, grid);
  fa.dealias();
  fa.applySymbol([](double xi, int) { return cplx(0.0, xi); });

  SpectralField wz = dX(w);
  std::vector<double> pz = wz.toPhysical();
  std::vector<double> vy = dXinv(dY(w)).toPhysical();
  for (std::size_t i = 0; i < pz.size(); ++i)
    pz[i] = -6.0 * (pz[i] + bg.qprime[i]) * vy[i];
  SpectralField fb = SpectralField::fromPhysical(pz, grid);
  fb.dealias();

  fa += fb;
  double m = annihilateK0(fa);
  if (k0_injection) *k0_injection = std::max(*k0_injection, m);
  return fa;
}

struct EtdTables {
  avec<cplx> E, E2, Q, f1, f2x2, f3;  // f2x2 carries the factor 2 of the scheme
};

// phi-function coefficients by 32-point contour averaging around each z = dt*L
EtdTables etdTables(const Grid& grid, const FlowSpec& spec) {
  const int M = 32;
  EtdTables t;
  std::size_t n = grid.spec_size();
  t.E.resize(n); t.E2.resize(n); t.Q.resize(n);
  t.f1.resize(n); t.f2x2.resize(n); t.f3.resize(n);
  double h = spec.dt;
  for (int j = 0; j < grid.ny; ++j) {
    int nm = grid.nmode(j);
    for (int k = 0; k < grid.nxh(); ++k) {
      cplx sym = spec.equation == Equation::KP2 ? kp2Symbol(grid.xi(k), nm)
                                                : mkp2Symbol(grid.xi(k), nm, spec.c);
      cplx z = h * sym;
      std::size_t idx = std::size_t(j) * grid.nxh() + k;
      t.E[idx] = std::exp(z);
      t.E2[idx] = std::exp(0.5 * z);
      cplx q(0.0), f1(0.0), f2(0.0), f3(0.0);
      for (int m = 0; m < M; ++m) {
        cplx r = std::exp(cplx(0.0, 2.0 * M_PI * (m + 0.5) / M));
        cplx zz = z + r;
        cplx ez = std::exp(zz);
        cplx z3 = zz * zz * zz;
        q += (std::exp(0.5 * zz) - 1.0) / zz;
        f1 += (-4.0 - zz + ez * (4.0 - 3.0 * zz + zz * zz)) / z3;
        f2 += (2.0 + zz + ez * (-2.0 + zz)) / z3;
        f3 += (-4.0 - 3.0 * zz - zz * zz + ez * (4.0 - zz)) / z3;
      }
      t.Q[idx] = h * q / double(M);
      t.f1[idx] = h * f1 / double(M);
      t.f2x2[idx] = 2.0 * h * f2 / double(M);
      t.f3[idx] = h * f3 / double(M);
    }
  }
  return t;
}

}  // namespace

void FlowSpec::validate(const Grid& grid) const {
  if (!(dt > 0.0)) throw ConfigError("FlowSpec: dt must be positive");
  if (!(t_end >= 0.0)) throw ConfigError("FlowSpec: t_end must be nonnegative");
  if (equation == Equation::MKP2_PERTURBATION && !(c > 0.0))
    throw ConfigError("FlowSpec: c must be positive");
  if (observe_every < 1) throw ConfigError("FlowSpec: observe_every must be >= 1");
  if (dt * maxSymbol(grid, *this) > kStabilityBudget)
    throw ConfigError("FlowSpec: dt exceeds the scheme stability budget for this grid");
}

int FlowSpec::steps() const {
  int s = int(std::llround(t_end / dt));
  return s < 0 ? 0 : s;
}

void TimeSeries::append(double t, std::vector<double> row) {
  times.push_back(t);
  rows.push_back(std::move(row));
}

SpectralField kp2Rhs(const SpectralField& u) {
  requireFlowableXMean(u);
  SpectralField lin = u;
  lin.applySymbol([](double xi, int n) { return kp2Symbol(xi, n); });
  return lin + kp2Nonlinear(u);
}

SpectralField mkp2PerturbationRhs(const SpectralField& w, const KinkBackground& bg) {
  requireFlowableXMean(w);
  requireLocalized(w);
  SpectralField lin = w;
  double c = bg.c;
  lin.applySymbol([c](double xi, int n) { return mkp2Symbol(xi, n, c); });
  return lin + mkp2Nonlinear(w, bg, nullptr);
}

IntegrateResult integrate(const SpectralField& u0, const FlowSpec& spec,
                          const Observer& observer) {
  const Grid& grid = u0.grid();
  spec.validate(grid);
  requireFlowableXMean(u0);

  IntegrateResult res;
  KinkBackground bg;
  if (spec.equation == Equation::MKP2_PERTURBATION) bg = makeKink(grid, spec.c, 0.0);

  auto rhs = [&](const SpectralField& u) -> SpectralField {
    if (spec.equation == Equation::KP2) {
      SpectralField g = kp2Nonlinear(u);
      double m = annihilateK0(g);
      res.max_k0_injection = std::max(res.max_k0_injection, m);
      return g;
    }
    return mkp2Nonlinear(u, bg, &res.max_k0_injection);
  };

  EtdTables tab = etdTables(grid, spec);
  const KernelTable& kt = kernels();
  std::size_t n = grid.spec_size();

  SpectralField u = u0;
  u.dealias();
  annihilateK0(u);
  int nsteps = spec.steps();
  if (observer) observer(0, 0.0, u);

  SpectralField sa(grid), sb(grid), sc(grid), tmp(grid);
  for (int step = 0; step < nsteps; ++step) {
    if (!spec.nonlinear) {
      kt.cmul_inplace(u.data(), tab.E.data(), n);
    } else if (spec.scheme == Scheme::ETDRK4) {
      SpectralField Nu = rhs(u);
      kt.cmuladd(sa.data(), tab.E2.data(), u.data(), tab.Q.data(), Nu.data(), n);
      SpectralField Na = rhs(sa);
      kt.cmuladd(sb.data(), tab.E2.data(), u.data(), tab.Q.data(), Na.data(), n);
      SpectralField Nb = rhs(sb);
      for (std::size_t i = 0; i < n; ++i) tmp.data()[i] = 2.0 * Nb.data()[i] - Nu.data()[i];
      kt.cmuladd(sc.data(), tab.E2.data(), sa.data(), tab.Q.data(), tmp.data(), n);
      SpectralField Nc = rhs(sc);
      Na += Nb;
      kt.ccombine4(u.data(), tab.E.data(), u.data(), tab.f1.data(), Nu.data(),
                   tab.f2x2.data(), Na.data(), tab.f3.data(), Nc.data(), n);
    } else {  // IFRK4
      double h = spec.dt;
      SpectralField k1 = rhs(u);
      k1 *= h;
      for (std::size_t i = 0; i < n; ++i)
        tmp.data()[i] = tab.E2[i] * (u.data()[i] + 0.5 * k1.data()[i]);
      SpectralField k2 = rhs(tmp);
      k2 *= h;
      for (std::size_t i = 0; i < n; ++i)
        tmp.data()[i] = tab.E2[i] * u.data()[i] + 0.5 * k2.data()[i];
      SpectralField k3 = rhs(tmp);
      k3 *= h;
      for (std::size_t i = 0; i < n; ++i)
        tmp.data()[i] = tab.E[i] * u.data()[i] + tab.E2[i] * k3.data()[i];
      SpectralField k4 = rhs(tmp);
      k4 *= h;
      for (std::size_t i = 0; i < n; ++i)
        u.data()[i] = tab.E[i] * u.data()[i] +
                      (tab.E[i] * k1.data()[i] +
                       2.0 * tab.E2[i] * (k2.data()[i] + k3.data()[i]) +
                       k4.data()[i]) / 6.0;
    }

    double ss = kt.csumsq(u.data(), n);
    if (!std::isfinite(ss)) throw NanDetected("integration produced non-finite coefficients");
    if (u.l2() > spec.blowup_limit) throw BlowupDetected("norm exceeded the blowup limit");

    if (observer && ((step + 1) % spec.observe_every == 0 || step + 1 == nsteps))
      observer(step + 1, (step + 1) * spec.dt, u);
  }

  res.final_field = u;
  res.t_final = nsteps * spec.dt;
  res.steps = nsteps;
  return res;
}

double l2Drift(const std::vector<double>& l2_values) {
  if (l2_values.empty()) return 0.0;
  double v0 = l2_values.front();
  double m = 0.0;
  for (double v : l2_values) m = std::max(m, std::fabs(v - v0));
  return v0 > 0.0 ? m / v0 : m;
}

}  // namespace kpcyl
