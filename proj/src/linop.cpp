#include "kpcyl/linop.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "kpcyl/random_fields.hpp"

namespace kpcyl {

namespace {

SpectralField applyVariant(const SpectralField& w, double c, Variant variant) {
  requireLocalized(w);
  KinkBackground bg = makeKink(w.grid(), c, 0.0);
  // undealiased product: the operator is linear and the derivative term keeps
  // every retained mode, so truncating 2Qw would break exact cancellations
  // (e.g. the kernel direction) at the dealiasing cutoff
  std::vector<double> wp = w.toPhysical();
  for (std::size_t i = 0; i < wp.size(); ++i) wp[i] *= 2.0 * bg.q[i];
  SpectralField out = variant == Variant::L ? dX(w) : -1.0 * dX(w);
  out += dXinv(dY(w));
  out -= SpectralField::fromPhysical(wp, w.grid());
  return out;
}

std::vector<cplx> extractRow(const SpectralField& f, int j) {
  const Grid& g = f.grid();
  std::vector<cplx> a(g.nx);
  for (int k = 0; k < g.nx; ++k) a[k] = f.mode(j, k <= g.nx / 2 ? k : k - g.nx);
  f.fft().backward1d(a.data());  // physical complex samples of f_n(x)
  return a;
}

void depositRow(SpectralField& out, int j, std::vector<cplx> u_phys) {
  const Grid& g = out.grid();
  out.fft().forward1d(u_phys.data());
  for (int k = 0; k < g.nxh(); ++k) out.at(j, k) = u_phys[k];
  int jc = (g.ny - j) % g.ny;
  if (jc != j)
    for (int k = 0; k < g.nxh(); ++k)
      out.at(jc, k) = std::conj(u_phys[(g.nx - k) % g.nx]);
}

}  // namespace

SpectralField applyL(const SpectralField& w, double c) {
  return applyVariant(w, c, Variant::L);
}

SpectralField applyLAdj(const SpectralField& w, double c) {
  return applyVariant(w, c, Variant::L_ADJ);
}

SpectralField solveFull(const SpectralField& f, double c, Variant variant,
                        const FullSolveOptions& opt, FullSolveStats* stats) {
  const Grid& grid = f.grid();
  SpectralField rhs = f;

  if (variant == Variant::L) {
    SpectralField pf = phiField(grid, c);
    double ip = l2Inner(rhs, pf);
    double fn = rhs.l2(), pn = pf.l2();
    if (fn > 0.0 && std::fabs(ip) > kOrthoTol * fn * pn) {
      if (!opt.project)
        throw RangeViolation("solveFull: rhs has a component along phi_c (cokernel)");
      SpectralField proj = pf;
      proj *= ip / (pn * pn);
      rhs -= proj;
    }
  }

  XGrid xg{grid.nx, grid.lx};
  SpectralField out(grid);
  if (stats) *stats = FullSolveStats{};

  for (int j = 0; j <= grid.ny / 2; ++j) {
    int n = grid.nmode(j);
    std::vector<cplx> fn = extractRow(rhs, j);
    ModeSolution sol;
    if (n == 0) {
      sol = solveMode0(fn, xg, c, variant);
    } else {
      ModeProblem p;
      p.n = n;
      p.c = c;
      p.variant = variant;
      p.grid = xg;
      p.rhs = std::move(fn);
      sol = solveModeN(p, opt.backend, opt.tol, opt.maxit);
    }
    if (stats) {
      stats->max_residual = std::max(stats->max_residual, sol.residual);
      stats->max_bound_constant = std::max(stats->max_bound_constant, sol.bound_constant);
      stats->bound_by_mode.push_back(sol.bound_constant);
    }
    depositRow(out, j, std::move(sol.u));
  }
  return out;
}

CoercivityReport coercivityProbe(const Grid& grid, double c, Variant variant,
                                 int ensemble_size,
                                 const std::optional<WeightSpec>& weight,
                                 std::uint64_t seed) {
  CoercivityReport rep;
  rep.variant = variant;
  rep.c = c;
  rep.ensemble = ensemble_size;
  rep.weighted = weight.has_value();
  rep.eps = weight ? weight->eps : 0.0;
  if (weight) {
    rep.x0_offsets = {-grid.lx / 3.0, 0.0, grid.lx / 3.0};
    rep.min_ratio_by_x0.assign(rep.x0_offsets.size(), HUGE_VAL);
  }

  SpectralField qp = qPrimeField(grid, c);
  double qpn2 = qp.l2() * qp.l2();

  std::vector<double> ratios;
  double global_min = HUGE_VAL;
  for (int e = 0; e < ensemble_size; ++e) {
    RandomFieldSpec rs;
    rs.seed = seed + std::uint64_t(e) * 0x100000001b3ULL;
    rs.amplitude = 1.0;
    rs.norm = RandomFieldSpec::Norm::E;
    SpectralField w = randomLocalizedField(grid, rs);
    if (variant == Variant::L_ADJ) {
      SpectralField proj = qp;
      proj *= l2Inner(w, qp) / qpn2;
      w -= proj;
    }
    SpectralField lw = applyVariant(w, c, variant);
    if (!weight) {
      double denom = eNorm(w).e_total;
      if (denom == 0.0) continue;
      double r = lw.l2() / denom;
      ratios.push_back(r);
      global_min = std::min(global_min, r);
    } else {
      for (std::size_t s = 0; s < rep.x0_offsets.size(); ++s) {
        WeightSpec ws{weight->eps, rep.x0_offsets[s]};
        double denom = weightedENorm(w, ws).e_total;
        if (denom == 0.0) continue;
        double r = weightedENorm(lw, ws).l2 / denom;
        ratios.push_back(r);
        rep.min_ratio_by_x0[s] = std::min(rep.min_ratio_by_x0[s], r);
        global_min = std::min(global_min, r);
      }
    }
  }
  rep.min_ratio = ratios.empty() ? 0.0 : global_min;
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    rep.median_ratio = ratios[ratios.size() / 2];
  }
  return rep;
}

std::string coercivityReportJson(const CoercivityReport& r) {
  nlohmann::json j;
  j["variant"] = r.variant == Variant::L ? "L" : "L_ADJ";
  j["c"] = r.c;
  j["ensemble"] = r.ensemble;
  j["weighted"] = r.weighted;
  if (r.weighted) {
    j["eps"] = r.eps;
    j["x0_offsets"] = r.x0_offsets;
    j["min_ratio_by_x0"] = r.min_ratio_by_x0;
  }
  j["min_ratio"] = r.min_ratio;
  j["median_ratio"] = r.median_ratio;
  return j.dump(2);
}

}  // namespace kpcyl
