#pragma once
// Data-parallel inner loops used by the spectral pipeline.
//
// Every kernel has a scalar reference implementation and (on x86-64 with
// AVX2+FMA) a vectorized variant. kernels() returns the table selected at
// startup from cpuid; kernels_scalar() is always available so the two can
// be equivalence-tested against each other.

#include <complex>
#include <cstddef>
#include <cstdint>

namespace kpcyl {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;

  // c[i] *= s[i]
  void (*cmul_inplace)(cplx* c, const cplx* s, std::size_t n);
  // out[i] = a[i] * s[i]
  void (*cmul)(cplx* out, const cplx* a, const cplx* s, std::size_t n);
  // ETDRK4 stage combine: out[i] = e[i]*u[i] + f1[i]*a[i] + f2[i]*b[i] + f3[i]*c[i]
  void (*ccombine4)(cplx* out, const cplx* e, const cplx* u, const cplx* f1,
                    const cplx* a, const cplx* f2, const cplx* b,
                    const cplx* f3, const cplx* c, std::size_t n);
  // out[i] = e[i]*u[i] + f[i]*a[i]
  void (*cmuladd)(cplx* out, const cplx* e, const cplx* u, const cplx* f,
                  const cplx* a, std::size_t n);

  // out[i] = a[i]*a[i]
  void (*rsquare)(double* out, const double* a, std::size_t n);
  // out[i] = a[i]*b[i]
  void (*rmul)(double* out, const double* a, const double* b, std::size_t n);
  // out[i] += alpha*a[i]*b[i]
  void (*rfma_acc)(double* out, double alpha, const double* a, const double* b,
                   std::size_t n);
  // sum a[i]^2
  double (*rsumsq)(const double* a, std::size_t n);
  // sum w[i]*a[i]^2
  double (*rwsumsq)(const double* w, const double* a, std::size_t n);
  // sum a[i]*b[i]
  double (*rdot)(const double* a, const double* b, std::size_t n);
  // max |a[i]|
  double (*rmaxabs)(const double* a, std::size_t n);
  // sum |c[i]|^2
  double (*csumsq)(const cplx* c, std::size_t n);
};

const KernelTable& kernels();         // runtime-dispatched table
const KernelTable& kernels_scalar();  // reference implementation
const KernelTable* kernels_avx2();    // nullptr when unsupported at build/run time

}  // namespace kpcyl
