// AVX2+FMA variants. This TU is compiled with -mavx2 -mfma unconditionally;
// dispatch.cpp only hands out the table when cpuid reports support.

#include "kpcyl/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__) && (defined(__x86_64__) || defined(_M_X64))
#define KPCYL_HAVE_AVX2 1
#include <immintrin.h>
#else
#define KPCYL_HAVE_AVX2 0
#endif

namespace kpcyl {

#if KPCYL_HAVE_AVX2
namespace {

// Two complex doubles per 256-bit lane, interleaved (re, im, re, im).
inline __m256d cmul_pd(__m256d a, __m256d b) {
  __m256d b_re = _mm256_movedup_pd(b);                    // (br0,br0,br1,br1)
  __m256d b_im = _mm256_permute_pd(b, 0xF);               // (bi0,bi0,bi1,bi1)
  __m256d a_sw = _mm256_permute_pd(a, 0x5);               // (ai0,ar0,ai1,ar1)
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

void cmul_inplace(cplx* c, const cplx* s, std::size_t n) {
  std::size_t i = 0;
  auto* pc = reinterpret_cast<double*>(c);
  const auto* ps = reinterpret_cast<const double*>(s);
  for (; i + 2 <= n; i += 2) {
    __m256d a = _mm256_loadu_pd(pc + 2 * i);
    __m256d b = _mm256_loadu_pd(ps + 2 * i);
    _mm256_storeu_pd(pc + 2 * i, cmul_pd(a, b));
  }
  for (; i < n; ++i) c[i] *= s[i];
}

void cmul(cplx* out, const cplx* a, const cplx* s, std::size_t n) {
  std::size_t i = 0;
  auto* po = reinterpret_cast<double*>(out);
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* ps = reinterpret_cast<const double*>(s);
  for (; i + 2 <= n; i += 2) {
    __m256d x = _mm256_loadu_pd(pa + 2 * i);
    __m256d y = _mm256_loadu_pd(ps + 2 * i);
    _mm256_storeu_pd(po + 2 * i, cmul_pd(x, y));
  }
  for (; i < n; ++i) out[i] = a[i] * s[i];
}

void ccombine4(cplx* out, const cplx* e, const cplx* u, const cplx* f1,
               const cplx* a, const cplx* f2, const cplx* b, const cplx* f3,
               const cplx* c, std::size_t n) {
  std::size_t i = 0;
  auto* po = reinterpret_cast<double*>(out);
  const auto* pe = reinterpret_cast<const double*>(e);
  const auto* pu = reinterpret_cast<const double*>(u);
  const auto* p1 = reinterpret_cast<const double*>(f1);
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* p2 = reinterpret_cast<const double*>(f2);
  const auto* pb = reinterpret_cast<const double*>(b);
  const auto* p3 = reinterpret_cast<const double*>(f3);
  const auto* pc = reinterpret_cast<const double*>(c);
  for (; i + 2 <= n; i += 2) {
    __m256d acc = cmul_pd(_mm256_loadu_pd(pe + 2 * i), _mm256_loadu_pd(pu + 2 * i));
    acc = _mm256_add_pd(acc, cmul_pd(_mm256_loadu_pd(p1 + 2 * i), _mm256_loadu_pd(pa + 2 * i)));
    acc = _mm256_add_pd(acc, cmul_pd(_mm256_loadu_pd(p2 + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
    acc = _mm256_add_pd(acc, cmul_pd(_mm256_loadu_pd(p3 + 2 * i), _mm256_loadu_pd(pc + 2 * i)));
    _mm256_storeu_pd(po + 2 * i, acc);
  }
  for (; i < n; ++i)
    out[i] = e[i] * u[i] + f1[i] * a[i] + f2[i] * b[i] + f3[i] * c[i];
}

void cmuladd(cplx* out, const cplx* e, const cplx* u, const cplx* f,
             const cplx* a, std::size_t n) {
  std::size_t i = 0;
  auto* po = reinterpret_cast<double*>(out);
  const auto* pe = reinterpret_cast<const double*>(e);
  const auto* pu = reinterpret_cast<const double*>(u);
  const auto* pf = reinterpret_cast<const double*>(f);
  const auto* pa = reinterpret_cast<const double*>(a);
  for (; i + 2 <= n; i += 2) {
    __m256d acc = cmul_pd(_mm256_loadu_pd(pe + 2 * i), _mm256_loadu_pd(pu + 2 * i));
    acc = _mm256_add_pd(acc, cmul_pd(_mm256_loadu_pd(pf + 2 * i), _mm256_loadu_pd(pa + 2 * i)));
    _mm256_storeu_pd(po + 2 * i, acc);
  }
  for (; i < n; ++i) out[i] = e[i] * u[i] + f[i] * a[i];
}

void rsquare(double* out, const double* a, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(a + i);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(x, x));
  }
  for (; i < n; ++i) out[i] = a[i] * a[i];
}

void rmul(double* out, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void rfma_acc(double* out, double alpha, const double* a, const double* b,
              std::size_t n) {
  std::size_t i = 0;
  __m256d va = _mm256_set1_pd(alpha);
  for (; i + 4 <= n; i += 4) {
    __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(va, prod, _mm256_loadu_pd(out + i)));
  }
  for (; i < n; ++i) out[i] += alpha * a[i] * b[i];
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double rsumsq(const double* a, std::size_t n) {
  std::size_t i = 0;
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(a + i);
    acc = _mm256_fmadd_pd(x, x, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

double rwsumsq(const double* w, const double* a, std::size_t n) {
  std::size_t i = 0;
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(a + i);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(x, x), _mm256_loadu_pd(w + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * a[i] * a[i];
  return s;
}

double rdot(const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double rmaxabs(const double* a, std::size_t n) {
  std::size_t i = 0;
  __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4)
    m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(a + i)));
  __m128d lo = _mm_max_pd(_mm256_castpd256_pd128(m), _mm256_extractf128_pd(m, 1));
  double r = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) r = r > __builtin_fabs(a[i]) ? r : __builtin_fabs(a[i]);
  return r;
}

double csumsq(const cplx* c, std::size_t n) {
  return rsumsq(reinterpret_cast<const double*>(c), 2 * n);
}

const KernelTable table = {
    "avx2",   cmul_inplace, cmul,    ccombine4, cmuladd, rsquare, rmul,
    rfma_acc, rsumsq,       rwsumsq, rdot,      rmaxabs, csumsq,
};

}  // namespace
#endif  // KPCYL_HAVE_AVX2

const KernelTable* kernels_avx2() {
#if KPCYL_HAVE_AVX2
  return &table;
#else
  return nullptr;
#endif
}

}  // namespace kpcyl
