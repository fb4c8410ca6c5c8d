#include "kpcyl/diagnostics.hpp"

#include <cmath>

#include "kpcyl/kernels.hpp"

namespace kpcyl {

double weightedMass(const SpectralField& u, const WeightSpec& w) {
  const Grid& grid = u.grid();
  std::vector<double> cw = chiSamples(grid, w);
  std::vector<double> p = u.toPhysical();
  return kernels().rwsumsq(cw.data(), p.data(), p.size()) * grid.dx() * grid.dy();
}

std::vector<double> differentiateSeries(const std::vector<double>& v, double h) {
  std::size_t n = v.size();
  std::vector<double> d(n, 0.0);
  if (n < 5) {  // too short for the 5-point stencils; fall back to 2nd order
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i]) / h;
    if (n >= 2) d[n - 1] = (v[n - 1] - v[n - 2]) / h;
    return d;
  }
  auto fwd0 = [&](std::size_t i) {
    return (-25.0 * v[i] + 48.0 * v[i + 1] - 36.0 * v[i + 2] + 16.0 * v[i + 3] -
            3.0 * v[i + 4]) / (12.0 * h);
  };
  auto fwd1 = [&](std::size_t i) {
    return (-3.0 * v[i - 1] - 10.0 * v[i] + 18.0 * v[i + 1] - 6.0 * v[i + 2] +
            v[i + 3]) / (12.0 * h);
  };
  d[0] = fwd0(0);
  d[1] = fwd1(1);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
  // mirrored one-sided stencils at the right end
  auto bwd1 = [&](std::size_t i) {
    return -(-3.0 * v[i + 1] - 10.0 * v[i] + 18.0 * v[i - 1] - 6.0 * v[i - 2] +
             v[i - 3]) / (12.0 * h);
  };
  auto bwd0 = [&](std::size_t i) {
    return -(-25.0 * v[i] + 48.0 * v[i - 1] - 36.0 * v[i - 2] + 16.0 * v[i - 3] -
             3.0 * v[i - 4]) / (12.0 * h);
  };
  d[n - 2] = bwd1(n - 2);
  d[n - 1] = bwd0(n - 1);
  return d;
}

namespace {

// Right side of the balance identity at a single time. The x-derivatives of
// the weight are applied spectrally to its samples, which turns every
// integration by parts into an exact discrete (summation-by-parts) identity on
// the periodic grid — no boundary terms at the x-seam. The cubic term carries
// +4u^3: that is the sign the flow convention produces, and it matches the
// exact discrete rate to machine precision. Only the weight's time derivative
// (the -c1 chi' transport term) stays analytic, because the samples really do
// move with chi(x + x0 - c1 t).
double katoRhs(const SpectralField& u, const WeightSpec& weight, double c1, double t) {
  const Grid& grid = u.grid();
  double shift = weight.x0 - c1 * t;
  std::vector<double> p = u.toPhysical();
  std::vector<double> ux = dX(u).toPhysical();
  std::vector<double> vy = dXinv(dY(u)).toPhysical();
  SpectralField cs = fieldFromX(
      grid, [&](double x) { return chi(weight.eps, x + shift); });
  std::vector<double> cpd = dX(cs).toPhysical();
  std::vector<double> cpppd = dX(dX(dX(cs))).toPhysical();
  double s = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      std::size_t idx = std::size_t(j) * grid.nx + i;
      double uu = p[idx];
      s += (-3.0 * ux[idx] * ux[idx] - 3.0 * vy[idx] * vy[idx] + 4.0 * uu * uu * uu) *
               cpd[idx] +
           uu * uu * (cpppd[idx] - c1 * chiPrime(weight.eps, grid.x(i) + shift));
    }
  }
  return s * grid.dx() * grid.dy();
}

}  // namespace

KatoSeries katoBalance(const SpectralField& u0, const FlowSpec& spec,
                       const WeightSpec& weight, double c1) {
  KatoSeries out;
  FlowSpec s = spec;
  s.observe_every = 1;  // dense sampling: the rate is differenced in time
  integrate(u0, s, [&](int, double t, const SpectralField& u) {
    WeightSpec wt{weight.eps, weight.x0 - c1 * t};
    out.times.push_back(t);
    out.mass.push_back(weightedMass(u, wt));
    out.rhs.push_back(katoRhs(u, weight, c1, t));
  });
  out.lhs_rate = differentiateSeries(out.mass, s.dt);
  out.residual.resize(out.mass.size());
  double rhs_scale = 0.0;
  for (double r : out.rhs) rhs_scale = std::max(rhs_scale, std::fabs(r));
  for (std::size_t i = 0; i < out.mass.size(); ++i) {
    out.residual[i] = out.lhs_rate[i] - out.rhs[i];
    if (rhs_scale > 0.0)
      out.max_rel_residual = std::max(out.max_rel_residual, std::fabs(out.residual[i]) / rhs_scale);
  }
  return out;
}

MonotonicityResult monotonicityProbe(const SpectralField& u0, const WeightSpec& weight,
                                     double c1, const FlowSpec& spec, double delta) {
  if (u0.l2() > delta * (1.0 + 1e-9))
    throw SmallnessViolation("monotonicityProbe: initial mass above the smallness threshold");
  const Grid& grid = u0.grid();
  double x_start = c1 * 0.0 - weight.x0, x_end = c1 * spec.t_end - weight.x0;
  if (std::fabs(x_start) > 0.9 * grid.lx || std::fabs(x_end) > 0.9 * grid.lx)
    throw WindowExitedDomain("monotonicityProbe: moving window leaves the domain");

  MonotonicityResult out;
  FlowSpec s = spec;
  s.observe_every = 1;
  integrate(u0, s, [&](int, double t, const SpectralField& u) {
    WeightSpec wt{weight.eps, weight.x0 - c1 * t};
    out.times.push_back(t);
    out.mass.push_back(weightedMass(u, wt));
  });
  for (std::size_t i = 1; i < out.mass.size(); ++i)
    out.max_increment = std::max(out.max_increment, out.mass[i] - out.mass[i - 1]);
  if (!out.mass.empty() && out.mass.front() > 0.0)
    out.final_over_initial = out.mass.back() / out.mass.front();
  return out;
}

}  // namespace kpcyl
