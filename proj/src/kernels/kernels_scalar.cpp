#include "kpcyl/kernels.hpp"

#include <cmath>

namespace kpcyl {
namespace {

void cmul_inplace(cplx* c, const cplx* s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) c[i] *= s[i];
}

void cmul(cplx* out, const cplx* a, const cplx* s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * s[i];
}

void ccombine4(cplx* out, const cplx* e, const cplx* u, const cplx* f1,
               const cplx* a, const cplx* f2, const cplx* b, const cplx* f3,
               const cplx* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = e[i] * u[i] + f1[i] * a[i] + f2[i] * b[i] + f3[i] * c[i];
}

void cmuladd(cplx* out, const cplx* e, const cplx* u, const cplx* f,
             const cplx* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = e[i] * u[i] + f[i] * a[i];
}

void rsquare(double* out, const double* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * a[i];
}

void rmul(double* out, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void rfma_acc(double* out, double alpha, const double* a, const double* b,
              std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += alpha * a[i] * b[i];
}

double rsumsq(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

double rwsumsq(const double* w, const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * a[i] * a[i];
  return s;
}

double rdot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double rmaxabs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

double csumsq(const cplx* c, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::norm(c[i]);
  return s;
}

const KernelTable table = {
    "scalar",  cmul_inplace, cmul,   ccombine4, cmuladd, rsquare, rmul,
    rfma_acc,  rsumsq,       rwsumsq, rdot,     rmaxabs, csumsq,
};

}  // namespace

const KernelTable& kernels_scalar() { return table; }

}  // namespace kpcyl
