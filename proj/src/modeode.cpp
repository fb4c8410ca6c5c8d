#include "kpcyl/modeode.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <random>

#include "kpcyl/profiles.hpp"
#include "kpcyl/util.hpp"

namespace kpcyl {

namespace {

// ---- 1-D c2c transforms, cached per length -------------------------------

struct Plans1d {
  fftw_plan fwd, bwd;
};

const Plans1d& plans1d(int n) {
  static std::mutex mu;
  static auto* cache = new std::map<int, Plans1d>;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache->find(n);
  if (it != cache->end()) return it->second;
  avec<cplx> buf(n);
  auto* p = reinterpret_cast<fftw_complex*>(buf.data());
  Plans1d pl;
  pl.fwd = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  pl.bwd = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache->emplace(n, pl).first->second;
}

void fft1(std::vector<cplx>& v) {
  auto* p = reinterpret_cast<fftw_complex*>(v.data());
  fftw_execute_dft(plans1d(int(v.size())).fwd, p, p);
  double s = 1.0 / double(v.size());
  for (auto& z : v) z *= s;
}

void ifft1(std::vector<cplx>& v) {
  auto* p = reinterpret_cast<fftw_complex*>(v.data());
  fftw_execute_dft(plans1d(int(v.size())).bwd, p, p);
}

// zero-padded Fourier upsampling by integer factor
std::vector<cplx> upsample(const std::vector<cplx>& v, int factor) {
  int n = int(v.size());
  std::vector<cplx> c = v;
  fft1(c);
  std::vector<cplx> fine(std::size_t(n) * factor, cplx(0.0));
  for (int k = 0; k < n; ++k) {
    int kk = k <= n / 2 ? k : k - n;
    int idx = kk >= 0 ? kk : int(fine.size()) + kk;
    fine[idx] += c[k];  // += folds the shared Nyquist mode correctly
  }
  ifft1(fine);
  return fine;
}

// cumulative integral at the nodes, 4th order (cubic panel rule)
std::vector<cplx> cumInt4(const cplx* g, std::size_t n, double h) {
  std::vector<cplx> c(n, cplx(0.0));
  if (n < 4) {
    for (std::size_t j = 0; j + 1 < n; ++j)
      c[j + 1] = c[j] + 0.5 * h * (g[j] + g[j + 1]);
    return c;
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    cplx panel;
    if (j == 0)
      panel = h * (9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3]) / 24.0;
    else if (j == n - 2)
      panel = h * (g[n - 4] - 5.0 * g[n - 3] + 19.0 * g[n - 2] + 9.0 * g[n - 1]) / 24.0;
    else
      panel = h * (-g[j - 1] + 13.0 * g[j] + 13.0 * g[j + 1] - g[j + 2]) / 24.0;
    c[j + 1] = c[j] + panel;
  }
  return c;
}

// fixed-point symbol: the Fourier multiplier of dx (in +- dx^2)^{-1}
cplx resolventSymbol(double xi, int n, Variant variant) {
  cplx in(0.0, double(n));
  cplx denom = variant == Variant::L ? in - xi * xi : in + xi * xi;
  return cplx(0.0, xi) / denom;
}

struct ModeOps {
  const XGrid& grid;
  int n;
  Variant variant;
  std::vector<double> q;  // Q_c on the grid

  ModeOps(const XGrid& g, int n_, double c, Variant v) : grid(g), n(n_), variant(v) {
    q.resize(g.nx);
    for (int i = 0; i < g.nx; ++i) q[i] = kinkQ(c, g.x(i));
  }

  // T a = 2 * Sym * fft(Q * ifft(a)) on full-spectrum coefficient vectors
  void applyT(const cplx* a, cplx* out) const {
    std::vector<cplx> t(a, a + grid.nx);
    ifft1(t);
    for (int i = 0; i < grid.nx; ++i) t[i] *= q[i];
    fft1(t);
    for (int k = 0; k < grid.nx; ++k)
      out[k] = 2.0 * resolventSymbol(grid.xi(k), n, variant) * t[k];
  }

  // adjoint in the coefficient inner product (Q real, FFT similarity unitary)
  void applyTAdj(const cplx* a, cplx* out) const {
    std::vector<cplx> t(grid.nx);
    for (int k = 0; k < grid.nx; ++k)
      t[k] = 2.0 * std::conj(resolventSymbol(grid.xi(k), n, variant)) * a[k];
    ifft1(t);
    for (int i = 0; i < grid.nx; ++i) t[i] *= q[i];
    fft1(t);
    std::copy(t.begin(), t.end(), out);
  }
};

double coeffNorm(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const cplx& z : a) s += std::norm(z);
  return std::sqrt(s);
}

// full (unrestarted) GMRES on coefficient vectors; returns iteration count
int gmres(const std::function<void(const cplx*, cplx*)>& applyA,
          const std::vector<cplx>& b, std::vector<cplx>& x, double tol, int maxit,
          double stall_factor = 0.999, int stall_limit = 8) {
  std::size_t n = b.size();
  double beta = coeffNorm(b);
  x.assign(n, cplx(0.0));
  if (beta == 0.0) return 0;
  maxit = std::min<int>(maxit, int(n));

  std::vector<std::vector<cplx>> V;
  V.push_back(b);
  for (auto& z : V[0]) z /= beta;
  std::vector<std::vector<cplx>> H;  // H[j] holds column j (j+2 entries)
  std::vector<cplx> cs(maxit), sn(maxit), g(maxit + 1, cplx(0.0));
  g[0] = beta;
  double max_diag = 0.0;
  int stalled = 0;

  int it = 0;
  for (; it < maxit; ++it) {
    std::vector<cplx> wv(n);
    applyA(V[it].data(), wv.data());
    std::vector<cplx> h(it + 2, cplx(0.0));
    for (int j = 0; j <= it; ++j) {  // modified Gram-Schmidt
      cplx hij(0.0);
      for (std::size_t i = 0; i < n; ++i) hij += std::conj(V[j][i]) * wv[i];
      h[j] = hij;
      for (std::size_t i = 0; i < n; ++i) wv[i] -= hij * V[j][i];
    }
    double hn = coeffNorm(wv);
    h[it + 1] = hn;
    for (int j = 0; j < it; ++j) {  // apply stored rotations
      cplx t = cs[j] * h[j] + sn[j] * h[j + 1];
      h[j + 1] = -std::conj(sn[j]) * h[j] + std::conj(cs[j]) * h[j + 1];
      h[j] = t;
    }
    double denom = std::sqrt(std::norm(h[it]) + std::norm(h[it + 1]));
    if (denom == 0.0) break;
    cs[it] = std::conj(h[it]) / denom;
    sn[it] = std::conj(h[it + 1]) / denom;
    cplx t = cs[it] * h[it] + sn[it] * h[it + 1];
    h[it + 1] = cplx(0.0);
    h[it] = t;
    double gprev = std::abs(g[it]);
    // a vanishing pivot means the new direction adds nothing solvable;
    // dropping it keeps the back substitution well conditioned
    double diag = std::abs(h[it]);
    if (!(diag > 1e-12 * max_diag)) break;
    max_diag = std::max(max_diag, diag);
    g[it + 1] = -std::conj(sn[it]) * g[it];
    g[it] = cs[it] * g[it];
    H.push_back(h);
    if (std::abs(g[it + 1]) <= tol * beta) { ++it; break; }
    // once the least-squares residual plateaus, further Krylov directions are
    // round-off; bail before they poison the Hessenberg
    if (std::abs(g[it + 1]) > stall_factor * gprev) {
      if (++stalled >= stall_limit) { ++it; break; }
    } else {
      stalled = 0;
    }
    if (hn == 0.0) { ++it; break; }
    for (auto& z : wv) z /= hn;
    V.push_back(std::move(wv));
  }

  // back substitution
  int m = int(H.size());
  std::vector<cplx> y(m, cplx(0.0));
  for (int i = m - 1; i >= 0; --i) {
    cplx s = g[i];
    for (int j = i + 1; j < m; ++j) s -= H[j][i] * y[j];
    y[i] = s / H[i][i];
  }
  for (int j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) x[i] += y[j] * V[j][i];
  return m;
}

void finishSolution(ModeSolution& sol, const std::vector<cplx>& f,
                    const XGrid& grid, int n, double c, Variant variant) {
  std::vector<cplx> uhat = sol.u;
  fft1(uhat);
  double two_lx = 2.0 * grid.lx;
  double s_h1 = 0.0, s_inv = 0.0;
  for (int k = 0; k < grid.nx; ++k) {
    double xi = grid.xi(k);
    double m = std::norm(uhat[k]);
    s_h1 += (1.0 + xi * xi) * m;
    if (k != 0 && xi != 0.0) s_inv += m / (xi * xi);
  }
  sol.h1_norm = std::sqrt(s_h1 * two_lx);
  sol.dxinv_norm = std::sqrt(s_inv * two_lx);

  std::vector<cplx> r = applyModeOperator(sol.u, grid, n, c, variant);
  for (int i = 0; i < grid.nx; ++i) r[i] -= f[i];
  if (n != 0) {
    // the mean row of the discrete equation is absorbed by the free
    // integration constant of the x-antiderivative (the zero-mean convention
    // fixes it arbitrarily), so it is not a residual of the line problem
    fft1(r);
    r[0] = cplx(0.0);
    ifft1(r);
  }
  double rn = 0.0, fn = 0.0;
  for (int i = 0; i < grid.nx; ++i) {
    rn += std::norm(r[i]);
    fn += std::norm(f[i]);
  }
  sol.residual = fn > 0.0 ? std::sqrt(rn / fn) : std::sqrt(rn * grid.dx());
  double fl2 = std::sqrt(fn * grid.dx());
  sol.bound_constant =
      fl2 > 0.0 ? (sol.h1_norm + std::abs(n) * sol.dxinv_norm) / fl2 : 0.0;
}

ModeSolution solveGreen(const ModeProblem& p) {
  const XGrid& g = p.grid;
  double dx = g.dx();
  int half_cells = std::min(g.nx / 2 - 2, int(std::floor(16.0 / dx)));
  double X = half_cells * dx;
  const int U = 32;
  double h = dx / U;
  FundamentalSystem fs = fundamentalSystem(p.n, p.c, p.variant, X, h);
  std::size_t N = fs.x.size();

  std::vector<cplx> fine = upsample(p.rhs, U);
  int i_left = g.nx / 2 - half_cells;  // coarse index of x = -X
  std::vector<cplx> fwin(N);
  for (std::size_t j = 0; j < N; ++j)
    fwin[j] = fine[(std::size_t(i_left) * U + j) % fine.size()];

  double sigma = p.variant == Variant::L ? 1.0 : -1.0;
  std::vector<cplx> rho_v(N), rho_w(N);
  for (std::size_t j = 0; j < N; ++j) {
    double twoQ = 2.0 * kinkQ(p.c, fs.x[j]);
    rho_v[j] = (fs.vp[j] - sigma * twoQ * fs.v[j]) / fs.wronskian[j] * fwin[j];
    rho_w[j] = (fs.wp[j] - sigma * twoQ * fs.w[j]) / fs.wronskian[j] * fwin[j];
  }
  std::vector<cplx> lcum = cumInt4(rho_v.data(), N, h);
  std::vector<cplx> rev(N);
  for (std::size_t j = 0; j < N; ++j) rev[j] = rho_w[N - 1 - j];
  std::vector<cplx> rrev = cumInt4(rev.data(), N, h);

  ModeSolution sol;
  sol.u.assign(g.nx, cplx(0.0));
  for (int i = 0; i < g.nx; ++i) {
    if (i < i_left || i > i_left + 2 * half_cells) continue;
    std::size_t j = std::size_t(i - i_left) * U;
    cplx rcum = rrev[N - 1 - j];  // integral from x to +X
    sol.u[i] = fs.v[j] * rcum + fs.w[j] * lcum[j];
  }
  finishSolution(sol, p.rhs, g, p.n, p.c, p.variant);
  return sol;
}

}  // namespace

ExponentSet exponents(int n, double c, Variant variant) {
  double q = std::sqrt(c / 2.0);
  double im = variant == Variant::L ? -double(n) : double(n);
  cplx s = std::sqrt(cplx(q * q, im));  // principal branch: Re >= 0
  ExponentSet e;
  if (variant == Variant::L) {
    e.mu_plus = q + s;
    e.mu_minus = -q + s;
    e.lambda_plus = q - s;
    e.lambda_minus = -q - s;
  } else {
    e.mu_plus = -q + s;
    e.mu_minus = q + s;
    e.lambda_plus = -q - s;
    e.lambda_minus = q - s;
  }
  return e;
}

std::vector<cplx> applyModeOperator(const std::vector<cplx>& u, const XGrid& grid,
                                    int n, double c, Variant variant) {
  std::vector<cplx> a = u;
  fft1(a);
  std::vector<cplx> du(grid.nx), inv(grid.nx);
  for (int k = 0; k < grid.nx; ++k) {
    double xi = grid.xi(k);
    du[k] = cplx(0.0, xi) * a[k];
    inv[k] = (k == 0) ? cplx(0.0) : a[k] / cplx(0.0, xi);
  }
  ifft1(du);
  ifft1(inv);
  double sign = variant == Variant::L ? 1.0 : -1.0;
  std::vector<cplx> out(grid.nx);
  for (int i = 0; i < grid.nx; ++i)
    out[i] = sign * du[i] + cplx(0.0, double(n)) * inv[i] -
             2.0 * kinkQ(c, grid.x(i)) * u[i];
  return out;
}

ModeSolution solveMode0(const std::vector<cplx>& f0, const XGrid& grid, double c,
                        Variant variant) {
  int nx = grid.nx;
  double dx = grid.dx();
  double s = std::sqrt(c / 2.0);

  std::vector<double> phi_c(nx), qp(nx);
  for (int i = 0; i < nx; ++i) {
    phi_c[i] = phi(c, grid.x(i));
    qp[i] = kinkQprime(c, grid.x(i));
  }
  double fl2 = l2NormX(f0, grid);

  const int U = 8;
  double hf = dx / U;
  std::vector<cplx> ffine = upsample(f0, U);
  std::size_t nf = ffine.size();
  auto xfine = [&](std::size_t j) { return -grid.lx + double(j) * hf; };

  double phl2 = 0.0;
  for (int i = 0; i < nx; ++i) phl2 += phi_c[i] * phi_c[i];

  if (variant == Variant::L) {
    double qpl2 = 0.0;
    for (int i = 0; i < nx; ++i) qpl2 += qp[i] * qp[i];
    qpl2 = std::sqrt(qpl2 * dx);
    cplx ip = innerX(f0, qp, grid);
    if (fl2 > 0.0 && std::abs(ip) > kOrthoTol * fl2 * qpl2)
      throw RangeViolation("solveMode0: rhs is not orthogonal to Q'");
  }

  // all phi ratios are formed in log space: phi(a)/phi(b) =
  // exp(2(lncosh(s b) - lncosh(s a))), so the sweeps never touch raw phi
  // values, which underflow in the kink tails once lx is a few hundred
  // e-foldings wide
  std::vector<double> lc(nf);
  for (std::size_t j = 0; j < nf; ++j) {
    double z = std::fabs(s * xfine(j));
    lc[j] = z + std::log1p(std::exp(-2.0 * z)) - M_LN2;
  }
  // 4th-order panel over [x_j, x_{j+1}] of f * exp(2(lc_ref - lc)); the
  // scaled weights are all O(1) because the stencil straddles the ref node
  // dir = +1 weights by phi/phi_ref, dir = -1 by phi_ref/phi
  auto panelScaled = [&](const std::vector<cplx>& f, std::size_t j, double lref, int dir) {
    auto g = [&](std::size_t m) { return std::exp(2.0 * dir * (lref - lc[m])) * f[m]; };
    if (j == 0) return hf * (9.0 * g(0) + 19.0 * g(1) - 5.0 * g(2) + g(3)) / 24.0;
    if (j == nf - 2)
      return hf * (g(nf - 4) - 5.0 * g(nf - 3) + 19.0 * g(nf - 2) + 9.0 * g(nf - 1)) / 24.0;
    return hf * (-g(j - 1) + 13.0 * g(j) + 13.0 * g(j + 1) - g(j + 2)) / 24.0;
  };

  auto direct = [&](const std::vector<cplx>& fin) {
    std::vector<cplx> u(nx, cplx(0.0));
    std::size_t i0 = std::size_t(nx / 2) * U;  // fine index of x = 0

    if (variant == Variant::L) {
      // remove the spurious phi component (no bounded solution carries it)
      std::vector<cplx> fp = fin;
      cplx ipp(0.0);
      for (int i = 0; i < nx; ++i) ipp += cplx(phi_c[i]) * fin[i];
      for (int i = 0; i < nx; ++i) fp[i] -= ipp / phl2 * phi_c[i];
      std::vector<cplx> ffine = upsample(fp, U);

      // u = (1/phi) int phi f, assembled as the stepwise recurrence
      // u_{j+1} = (phi_j/phi_{j+1}) u_j + int_{x_j}^{x_{j+1}} (phi/phi_{j+1}) f,
      // swept toward the crest from both ends: the per-step weight
      // phi_j/phi_{j+1} stays <= 1, so no 1/phi amplification occurs
      std::vector<cplx> uf(nf, cplx(0.0));
      // asymptotic end values: u ~ -f/(2Q) where the kink is flat
      uf[0] = -ffine[0] / (2.0 * kinkQ(c, xfine(0)));
      for (std::size_t j = 0; j < i0; ++j)
        uf[j + 1] = std::exp(2.0 * (lc[j + 1] - lc[j])) * uf[j] +
                    panelScaled(ffine, j, lc[j + 1], +1);
      uf[nf - 1] = -ffine[nf - 1] / (2.0 * kinkQ(c, xfine(nf - 1)));
      for (std::size_t j = nf - 1; j > i0 + 1; --j)
        uf[j - 1] = std::exp(2.0 * (lc[j - 1] - lc[j])) * uf[j] -
                    panelScaled(ffine, j - 1, lc[j - 1], +1);
      for (int i = 0; i < nx; ++i) u[i] = uf[std::size_t(i) * U];
    } else {
      // I(f)(x) = -phi(x) int_0^x f/phi, assembled outward from the crest as
      // I_{j+1} = (phi_{j+1}/phi_j) I_j - int_{x_j}^{x_{j+1}} (phi_{j+1}/phi) f;
      // the leading phi cancels the 1/phi growth, all weights stay <= O(1)
      std::vector<cplx> ffine = upsample(fin, U);
      std::vector<cplx> If(nf, cplx(0.0));
      for (std::size_t j = i0; j + 1 < nf; ++j)
        If[j + 1] = std::exp(2.0 * (lc[j] - lc[j + 1])) * If[j] -
                    panelScaled(ffine, j, lc[j + 1], -1);
      for (std::size_t j = i0; j > 0; --j)
        If[j - 1] = std::exp(2.0 * (lc[j] - lc[j - 1])) * If[j] +
                    panelScaled(ffine, j - 1, lc[j - 1], -1);
      std::vector<cplx> I(nx);
      for (int i = 0; i < nx; ++i) I[i] = If[std::size_t(i) * U];
      cplx num(0.0);
      for (int i = 0; i < nx; ++i) num += I[i] * phi_c[i];
      cplx alpha = -num / phl2;  // pin the kernel (phi) component to zero
      for (int i = 0; i < nx; ++i) u[i] = alpha * phi_c[i] + I[i];
    }
    return u;
  };

  // The sweep solves the ODE to ~1e-5 relative, but its output is not
  // periodic-analytic, so the spectral operator sees seam ringing. An inner
  // GMRES with the sweep as right preconditioner knocks that down to ~1e-6;
  // outer refinement rounds with freshly recomputed residuals then stack the
  // inner gain multiplicatively down to round-off.
  auto project = [&](std::vector<cplx>& v) {
    cplx ipp(0.0);
    for (int i = 0; i < nx; ++i) ipp += cplx(phi_c[i]) * v[i];
    for (int i = 0; i < nx; ++i) v[i] -= ipp / phl2 * phi_c[i];
  };
  auto precond = [&](const cplx* a, cplx* out) {
    std::vector<cplx> v(a, a + nx);
    std::vector<cplx> w = direct(v);
    std::vector<cplx> aw = applyModeOperator(w, grid, 0, c, variant);
    std::copy(aw.begin(), aw.end(), out);
  };
  ModeSolution sol;
  sol.u.assign(nx, cplx(0.0));
  std::vector<cplx> best_u = sol.u;
  double best_rn = HUGE_VAL;
  for (int round = 0; round < 6; ++round) {
    std::vector<cplx> r = applyModeOperator(sol.u, grid, 0, c, variant);
    double rn = 0.0;
    for (int i = 0; i < nx; ++i) {
      r[i] = f0[i] - r[i];
      rn += std::norm(r[i]);
    }
    // a round whose correction raised the true residual only feeds the next
    // round noise; keep the best iterate seen instead
    if (rn >= best_rn) break;
    best_rn = rn;
    best_u = sol.u;
    sol.iterations = round;
    if (std::sqrt(rn * dx) <= 1e-13 * std::max(fl2, 1e-300)) break;
    if (variant == Variant::L) project(r);
    std::vector<cplx> y;
    gmres(precond, r, y, 1e-12, 40, 0.9, 3);
    std::vector<cplx> du = direct(y);
    for (int i = 0; i < nx; ++i) sol.u[i] += du[i];
  }
  sol.u = best_u;

  finishSolution(sol, f0, grid, 0, c, variant);
  return sol;
}

ModeSolution solveModeN(const ModeProblem& p, ModeBackend backend, double tol,
                        int maxit) {
  if (p.n == 0) throw std::invalid_argument("solveModeN: use solveMode0 for n = 0");
  if (int(p.rhs.size()) != p.grid.nx)
    throw std::invalid_argument("solveModeN: rhs size does not match the grid");
  if (backend == ModeBackend::GREEN_KERNEL) return solveGreen(p);

  ModeOps ops(p.grid, p.n, p.c, p.variant);
  std::vector<cplx> g = p.rhs;
  fft1(g);
  for (int k = 0; k < p.grid.nx; ++k)
    g[k] *= resolventSymbol(p.grid.xi(k), p.n, p.variant);

  ModeSolution sol;
  std::vector<cplx> uhat(p.grid.nx, cplx(0.0));
  if (backend == ModeBackend::SPECTRAL_KRYLOV) {
    auto applyA = [&](const cplx* a, cplx* out) {
      ops.applyT(a, out);
      for (int k = 0; k < p.grid.nx; ++k) out[k] = a[k] - out[k];
    };
    sol.iterations = gmres(applyA, g, uhat, tol, maxit);
  } else {  // FIXED_POINT
    double gnorm = coeffNorm(g);
    std::vector<cplx> tu(p.grid.nx);
    double prev = HUGE_VAL;
    int bad = 0, it = 0;
    for (; it < maxit; ++it) {
      ops.applyT(uhat.data(), tu.data());
      double delta = 0.0;
      for (int k = 0; k < p.grid.nx; ++k) {
        cplx next = tu[k] + g[k];
        delta += std::norm(next - uhat[k]);
        uhat[k] = next;
      }
      delta = std::sqrt(delta);
      if (delta <= tol * std::max(gnorm, 1e-300)) { ++it; break; }
      bad = delta > prev ? bad + 1 : 0;
      if (bad >= 3 || !std::isfinite(delta))
        throw NonConvergence("solveModeN: fixed-point iteration diverges at this n");
      prev = delta;
    }
    if (it == maxit)
      throw NonConvergence("solveModeN: fixed-point iteration did not converge");
    sol.iterations = it;
  }

  sol.u = uhat;
  ifft1(sol.u);
  finishSolution(sol, p.rhs, p.grid, p.n, p.c, p.variant);
  return sol;
}

FundamentalSystem fundamentalSystem(int n, double c, Variant variant, double X,
                                    double h) {
  FundamentalSystem fs;
  fs.X = X;
  fs.h = h;
  std::size_t N = std::size_t(std::llround(2.0 * X / h)) + 1;
  fs.x.resize(N);
  for (std::size_t j = 0; j < N; ++j) fs.x[j] = -X + double(j) * h;
  fs.v.resize(N); fs.vp.resize(N); fs.w.resize(N); fs.wp.resize(N);
  fs.wronskian.resize(N);

  // u'' = a(x) u + b(x) u'
  auto ab = [&](double x, cplx& a, cplx& b) {
    double qv = kinkQ(c, x), qpv = kinkQprime(c, x);
    if (variant == Variant::L) {
      a = cplx(2.0 * qpv, -double(n));
      b = cplx(2.0 * qv, 0.0);
    } else {
      a = cplx(-2.0 * qpv, double(n));
      b = cplx(-2.0 * qv, 0.0);
    }
  };
  auto rk4 = [&](double x, double step, cplx& u, cplx& up) {
    auto f = [&](double xx, cplx uu, cplx pp, cplx& du, cplx& dp) {
      cplx a, b;
      ab(xx, a, b);
      du = pp;
      dp = a * uu + b * pp;
    };
    cplx k1u, k1p, k2u, k2p, k3u, k3p, k4u, k4p;
    f(x, u, up, k1u, k1p);
    f(x + 0.5 * step, u + 0.5 * step * k1u, up + 0.5 * step * k1p, k2u, k2p);
    f(x + 0.5 * step, u + 0.5 * step * k2u, up + 0.5 * step * k2p, k3u, k3p);
    f(x + step, u + step * k3u, up + step * k3p, k4u, k4p);
    u += step / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    up += step / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  };

  ExponentSet e = exponents(n, c, variant);
  cplx u = 1.0, up = e.mu_minus;  // decaying branch at the left end
  fs.v[0] = u; fs.vp[0] = up;
  for (std::size_t j = 1; j < N; ++j) {
    rk4(fs.x[j - 1], h, u, up);
    fs.v[j] = u; fs.vp[j] = up;
  }
  u = 1.0; up = e.lambda_plus;  // decaying branch at the right end
  fs.w[N - 1] = u; fs.wp[N - 1] = up;
  for (std::size_t j = N - 1; j > 0; --j) {
    rk4(fs.x[j], -h, u, up);
    fs.w[j - 1] = u; fs.wp[j - 1] = up;
  }
  for (std::size_t j = 0; j < N; ++j)
    fs.wronskian[j] = fs.v[j] * fs.wp[j] - fs.vp[j] * fs.w[j];
  return fs;
}

double tnOperatorNorm(int n, double c, const XGrid& grid, Variant variant, int iters) {
  ModeOps ops(grid, n, c, variant);
  std::vector<double> d(grid.nx);  // H1 weight on coefficients
  for (int k = 0; k < grid.nx; ++k) d[k] = std::sqrt(1.0 + grid.xi(k) * grid.xi(k));

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (std::uint64_t(n) << 20));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> a(grid.nx), t1(grid.nx), t2(grid.nx);
  for (auto& z : a) z = cplx(gauss(rng), gauss(rng));

  double sigma2 = 0.0;
  for (int it = 0; it < iters; ++it) {
    double na = coeffNorm(a);
    for (auto& z : a) z /= na;
    // apply (D T D^-1)^H (D T D^-1)
    for (int k = 0; k < grid.nx; ++k) t1[k] = a[k] / d[k];
    ops.applyT(t1.data(), t2.data());
    for (int k = 0; k < grid.nx; ++k) t2[k] *= d[k] * d[k];
    ops.applyTAdj(t2.data(), t1.data());
    for (int k = 0; k < grid.nx; ++k) t1[k] /= d[k];
    cplx ray(0.0);
    for (int k = 0; k < grid.nx; ++k) ray += std::conj(a[k]) * t1[k];
    sigma2 = std::abs(ray);
    a = t1;
  }
  return std::sqrt(sigma2);
}

int contractionThreshold(double c, const XGrid& grid, Variant variant, int n_max) {
  for (int n = 1; n <= n_max; ++n)
    if (tnOperatorNorm(n, c, grid, variant) <= 0.5) return n;
  return n_max + 1;
}

GreenKernelFit greenKernelDecay(int n, double c, Variant variant, double window) {
  double q = std::sqrt(c / 2.0);
  double im = variant == Variant::L ? -double(n) : double(n);
  GreenKernelFit fit;
  fit.rate = std::sqrt(cplx(q * q, im)).real() - q;

  double h = 2.0 * window / 4096.0;
  FundamentalSystem fs = fundamentalSystem(n, c, variant, window, h);
  std::size_t N = fs.x.size();
  const std::size_t stride = 64;
  for (std::size_t jx = 0; jx < N; jx += stride) {
    for (std::size_t jt = 0; jt < N; jt += stride) {
      std::size_t lo = std::min(jx, jt), hi = std::max(jx, jt);
      double gmod = std::abs(fs.v[lo] * fs.w[hi] / fs.wronskian[jt]);
      double sep = std::fabs(fs.x[jx] - fs.x[jt]);
      fit.K = std::max(fit.K, gmod * std::exp(fit.rate * sep));
    }
  }
  return fit;
}

double l2NormX(const std::vector<cplx>& u, const XGrid& grid) {
  double s = 0.0;
  for (const cplx& z : u) s += std::norm(z);
  return std::sqrt(s * grid.dx());
}

cplx innerX(const std::vector<cplx>& a, const std::vector<double>& b, const XGrid& grid) {
  cplx s(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * grid.dx();
}

}  // namespace kpcyl
