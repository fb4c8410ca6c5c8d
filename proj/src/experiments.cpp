#include "kpcyl/experiments.hpp"

#include <cmath>

#include "kpcyl/kernels.hpp"
#include "kpcyl/random_fields.hpp"

namespace kpcyl {

namespace {

constexpr double kTubeRadius = 0.1;  // L2 radius for the experiment pipelines
// dispersed radiation wraps the periodic domain during a long run, so flow
// diagnostics only sanity-check that the bulk of the perturbation stays off
// the seam
constexpr double kFlowBufferTol = 0.5;
constexpr double kInverseTol = 1e-6;  // inverse-transform defect tolerance

SpectralField drawPerturbation(const StabilityConfig& cfg) {
  RandomFieldSpec rs;
  rs.seed = cfg.seed;
  rs.amplitude = cfg.delta;
  rs.norm = RandomFieldSpec::Norm::L2;
  rs.ky_modes = cfg.ky_modes;
  return randomLocalizedField(cfg.grid, rs);
}

}  // namespace

LyapunovValue lyapunovFunctional(const ModulationState& mod, double c) {
  LyapunovValue out;
  KinkBackground bg = makeKink(mod.w.grid(), c, mod.gamma);
  double l2 = miuraMinusKink(bg, mod.w, kFlowBufferTol).l2();
  out.value = l2 * l2;
  double e = eNorm(mod.w).e_total;
  out.lower_bound_check = e > 0.0 ? out.value / (e * e) : 0.0;
  return out;
}

EmbeddingRatios weightedEmbeddingCheck(const SpectralField& w, const WeightSpec& weight,
                                       double p) {
  if (p < 2.0 || p > 6.0)
    throw std::invalid_argument("weightedEmbeddingCheck: p must be in [2,6]");
  EmbeddingRatios out;
  if (w.l2() == 0.0) {
    out.degenerate = true;
    return out;
  }
  EnormBreakdown e = eNorm(w);
  if (!e.dxinv_available) {
    out.degenerate = true;
    return out;
  }
  const Grid& grid = w.grid();
  std::vector<double> pw = w.toPhysical();
  std::vector<double> px = dX(w).toPhysical();
  std::vector<double> py = dXinv(dY(w)).toPhysical();

  double lp_w = 0.0, ias_lhs = 0.0, ias_rhs = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      std::size_t idx = std::size_t(j) * grid.nx + i;
      double cv = chi(weight.eps, grid.x(i) + weight.x0);
      double cp = chiPrime(weight.eps, grid.x(i) + weight.x0);
      double ww = pw[idx];
      lp_w += cv * std::pow(std::fabs(ww), p);
      ias_lhs += cp * cp * ww * ww * ww * ww;
      ias_rhs += cp * (ww * ww + px[idx] * px[idx] + py[idx] * py[idx]);
    }
  }
  double cell = grid.dx() * grid.dy();
  lp_w *= cell;
  ias_lhs = std::sqrt(ias_lhs * cell);
  ias_rhs *= cell;

  double ew = weightedENorm(w, weight).e_total;
  double denom = std::pow(e.e_total, p - 2.0) * ew * ew;
  out.wimbed_ratio = denom > 0.0 ? lp_w / denom : 0.0;
  out.ias_ratio = ias_rhs > 0.0 ? ias_lhs / ias_rhs : 0.0;
  out.degenerate = denom == 0.0 || ias_rhs == 0.0;
  return out;
}

ShiftFit infShiftDistance(const SpectralField& f, const SpectralField& ref,
                          double gamma_seed, double half_width) {
  const Grid& grid = f.grid();
  double area = (2.0 * grid.lx) * (2.0 * M_PI);
  auto dist2 = [&](double gamma) {
    double s = 0.0;
    for (int j = 0; j < grid.ny; ++j) {
      for (int k = 0; k < grid.nxh(); ++k) {
        double wgt = (k == 0 || k == grid.nx / 2) ? 1.0 : 2.0;
        cplx shifted = ref.at(j, k) * std::exp(cplx(0.0, grid.xi(k) * gamma));
        s += wgt * std::norm(f.at(j, k) - shifted);
      }
    }
    return s * area;
  };

  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = gamma_seed - half_width, b = gamma_seed + half_width;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = dist2(x1), f2 = dist2(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a);
      f1 = dist2(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a);
      f2 = dist2(x2);
    }
  }
  ShiftFit fit;
  fit.gamma = f1 < f2 ? x1 : x2;
  fit.distance = std::sqrt(std::min(f1, f2));
  return fit;
}

OrbitalResult orbitalStabilityExperiment(const StabilityConfig& cfg) {
  SpectralField u0 = drawPerturbation(cfg);
  if (u0.l2() > kTubeRadius)
    throw OutOfTube("orbitalStabilityExperiment: initial data outside the soliton tube");

  // generic dealiased data is not exactly in the discrete Miura range; the
  // attainable defect floor is the mode-0 seam residual (~1e-7), well below
  // anything the stability diagnostics resolve
  MiuraInverseResult inv = miuraInverse(u0, cfg.c, kTubeRadius, kInverseTol);
  OrbitalResult out;
  out.k = inv.k;
  out.series.columns = {"gamma", "gamma_rate", "w_enorm", "lyapunov", "kp_distance"};

  const Grid& grid = cfg.grid;
  KinkBackground bg = makeKink(grid, inv.k, 0.0);
  SpectralField phi_ref = phiField(grid, cfg.c);

  FlowSpec flow;
  flow.equation = Equation::MKP2_PERTURBATION;
  flow.c = inv.k;
  flow.dt = cfg.dt;
  flow.t_end = cfg.t_end;
  flow.scheme = cfg.scheme;
  flow.observe_every = cfg.observe_every;

  double prev_gamma = 0.0;
  double lyap0 = -1.0;
  integrate(inv.v, flow, [&](int, double t, const SpectralField& W) {
    ModulationState mod = modulationDecompose(W, inv.k, 0.0, prev_gamma);
    prev_gamma = mod.gamma;
    LyapunovValue lv = lyapunovFunctional(mod, inv.k);
    SpectralField F = miuraPlusKink(bg, W, kFlowBufferTol);
    ShiftFit fit = infShiftDistance(F, phi_ref, mod.gamma, 2.0 * grid.dx());
    if (lyap0 < 0.0) lyap0 = lv.value;
    out.sup_kp_distance = std::max(out.sup_kp_distance, fit.distance);
    if (t == 0.0) out.initial_kp_distance = fit.distance;
    if (lyap0 > 0.0)
      out.lyapunov_drift =
          std::max(out.lyapunov_drift, std::fabs(lv.value - lyap0) / lyap0);
    out.series.append(t, {mod.gamma, 0.0, eNorm(mod.w).e_total, lv.value, fit.distance});
  });

  // moving-frame gamma'(t); in the lab frame this is gamma_dot - k
  std::vector<double> gam(out.series.rows.size());
  for (std::size_t i = 0; i < gam.size(); ++i) gam[i] = out.series.rows[i][0];
  double dt_obs = out.series.times.size() > 1 ? out.series.times[1] - out.series.times[0]
                                              : cfg.dt;
  std::vector<double> rate = differentiateSeries(gam, dt_obs);
  for (std::size_t i = 0; i < gam.size(); ++i) {
    out.series.rows[i][1] = rate[i];
    out.sup_gamma_rate = std::max(out.sup_gamma_rate, std::fabs(rate[i]));
  }
  return out;
}

AsymptoticResult asymptoticStabilityExperiment(const StabilityConfig& cfg) {
  const Grid& grid = cfg.grid;
  SpectralField u0 = drawPerturbation(cfg);
  if (u0.l2() > kTubeRadius)
    throw OutOfTube("asymptoticStabilityExperiment: initial data outside the soliton tube");

  // generic dealiased data is not exactly in the discrete Miura range; the
  // attainable defect floor is the mode-0 seam residual (~1e-7), well below
  // anything the stability diagnostics resolve
  MiuraInverseResult inv = miuraInverse(u0, cfg.c, kTubeRadius, kInverseTol);
  if (cfg.t_end > grid.lx / (3.0 * inv.k))
    throw WindowExitedDomain(
        "asymptoticStabilityExperiment: t_end too large, the moving window wraps around");

  AsymptoticResult out;
  out.k = inv.k;
  out.series.columns = {"gamma", "halfplane_residual", "miura_mass", "weighted_w_enorm"};

  KinkBackground bg = makeKink(grid, inv.k, 0.0);
  SpectralField phi_ref = phiField(grid, inv.k);

  FlowSpec flow;
  flow.equation = Equation::MKP2_PERTURBATION;
  flow.c = inv.k;
  flow.dt = cfg.dt;
  flow.t_end = cfg.t_end;
  flow.scheme = cfg.scheme;
  flow.observe_every = cfg.observe_every;

  double prev_gamma = 0.0, prev_mass = -1.0;
  integrate(inv.v, flow, [&](int, double t, const SpectralField& W) {
    ModulationState mod = modulationDecompose(W, inv.k, 0.0, prev_gamma);
    prev_gamma = mod.gamma;

    SpectralField G = miuraMinusKink(bg, W, kFlowBufferTol);
    WeightSpec win{cfg.weight_eps, inv.k * t};
    double mass = weightedMass(G, win);
    if (prev_mass >= 0.0)
      out.max_mass_increment = std::max(out.max_mass_increment, mass - prev_mass);
    prev_mass = mass;

    double w_enorm = weightedENorm(mod.w, win).e_total;

    SpectralField F = miuraPlusKink(bg, W, kFlowBufferTol);
    ShiftFit fit = infShiftDistance(F, phi_ref, mod.gamma, 2.0 * grid.dx());
    // sharp-cutoff half-plane L2 of the residual over x >= -k t (moving frame)
    SpectralField R = F - shiftX(phi_ref, -fit.gamma);
    std::vector<double> pr = R.toPhysical();
    double edge = -inv.k * t;
    double s = 0.0;
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i)
        if (grid.x(i) >= edge) s += pr[std::size_t(j) * grid.nx + i] *
                                    pr[std::size_t(j) * grid.nx + i];
    double resid = std::sqrt(s * grid.dx() * grid.dy());

    out.series.append(t, {mod.gamma, resid, mass, w_enorm});
  });

  double r0 = out.series.rows.front()[1];
  double rT = out.series.rows.back()[1];
  out.final_over_initial_residual = r0 > 0.0 ? rT / r0 : 0.0;
  return out;
}

}  // namespace kpcyl
