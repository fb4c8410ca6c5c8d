#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "kpcyl/kernels.hpp"

using namespace kpcyl;

namespace {

std::vector<double> randomReal(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

std::vector<cplx> randomComplex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  return v;
}

double maxAbsDiff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double maxAbsDiff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// odd lengths exercise the vector-remainder tails
const std::size_t kSizes[] = {1, 3, 4, 7, 16, 33, 1000, 1025};

}  // namespace

TEST_CASE("dispatched table is one of the known implementations") {
  const KernelTable& t = kernels();
  CHECK((std::string(t.name) == "scalar" || std::string(t.name) == "avx2"));
}

TEST_CASE("complex kernels agree between scalar and dispatched tables") {
  const KernelTable& s = kernels_scalar();
  const KernelTable& v = kernels();
  for (std::size_t n : kSizes) {
    auto a = randomComplex(n, 10 + n), b = randomComplex(n, 20 + n);
    auto c = randomComplex(n, 30 + n), d = randomComplex(n, 40 + n);
    auto e = randomComplex(n, 50 + n), u = randomComplex(n, 60 + n);
    auto f1 = randomComplex(n, 70 + n), f2 = randomComplex(n, 80 + n);
    auto f3 = randomComplex(n, 90 + n);

    std::vector<cplx> o1(n), o2(n);
    s.cmul(o1.data(), a.data(), b.data(), n);
    v.cmul(o2.data(), a.data(), b.data(), n);
    CHECK(maxAbsDiff(o1, o2) < 1e-14);

    auto p1 = a, p2 = a;
    s.cmul_inplace(p1.data(), b.data(), n);
    v.cmul_inplace(p2.data(), b.data(), n);
    CHECK(maxAbsDiff(p1, p2) < 1e-14);

    s.ccombine4(o1.data(), e.data(), u.data(), f1.data(), a.data(), f2.data(), b.data(),
                f3.data(), c.data(), n);
    v.ccombine4(o2.data(), e.data(), u.data(), f1.data(), a.data(), f2.data(), b.data(),
                f3.data(), c.data(), n);
    CHECK(maxAbsDiff(o1, o2) < 1e-13);

    s.cmuladd(o1.data(), e.data(), u.data(), f1.data(), d.data(), n);
    v.cmuladd(o2.data(), e.data(), u.data(), f1.data(), d.data(), n);
    CHECK(maxAbsDiff(o1, o2) < 1e-14);

    CHECK(std::fabs(s.csumsq(a.data(), n) - v.csumsq(a.data(), n)) <
          1e-12 * (1.0 + s.csumsq(a.data(), n)));
  }
}

TEST_CASE("real kernels agree between scalar and dispatched tables") {
  const KernelTable& s = kernels_scalar();
  const KernelTable& v = kernels();
  for (std::size_t n : kSizes) {
    auto a = randomReal(n, 11 + n), b = randomReal(n, 22 + n), w = randomReal(n, 33 + n);

    std::vector<double> o1(n), o2(n);
    s.rsquare(o1.data(), a.data(), n);
    v.rsquare(o2.data(), a.data(), n);
    CHECK(maxAbsDiff(o1, o2) < 1e-14);

    s.rmul(o1.data(), a.data(), b.data(), n);
    v.rmul(o2.data(), a.data(), b.data(), n);
    CHECK(maxAbsDiff(o1, o2) < 1e-14);

    auto acc1 = randomReal(n, 44 + n), acc2 = acc1;
    s.rfma_acc(acc1.data(), 0.37, a.data(), b.data(), n);
    v.rfma_acc(acc2.data(), 0.37, a.data(), b.data(), n);
    CHECK(maxAbsDiff(acc1, acc2) < 1e-13);

    double scale = 1.0 + double(n);
    CHECK(std::fabs(s.rsumsq(a.data(), n) - v.rsumsq(a.data(), n)) < 1e-12 * scale);
    CHECK(std::fabs(s.rwsumsq(w.data(), a.data(), n) - v.rwsumsq(w.data(), a.data(), n)) <
          1e-11 * scale);
    CHECK(std::fabs(s.rdot(a.data(), b.data(), n) - v.rdot(a.data(), b.data(), n)) <
          1e-12 * scale);
    CHECK(s.rmaxabs(a.data(), n) == v.rmaxabs(a.data(), n));
  }
}

TEST_CASE("scalar kernels match straightforward loops") {
  std::size_t n = 257;
  auto a = randomReal(n, 5), b = randomReal(n, 6);
  const KernelTable& s = kernels_scalar();
  double dot = 0.0, ss = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dot += a[i] * b[i];
    ss += a[i] * a[i];
    mx = std::max(mx, std::fabs(a[i]));
  }
  CHECK(s.rdot(a.data(), b.data(), n) == doctest::Approx(dot).epsilon(1e-13));
  CHECK(s.rsumsq(a.data(), n) == doctest::Approx(ss).epsilon(1e-13));
  CHECK(s.rmaxabs(a.data(), n) == mx);
}

TEST_CASE("avx2 table, when present, matches scalar exactly on aligned data") {
  const KernelTable* v = kernels_avx2();
  if (!v) return;  // not supported on this host
  const KernelTable& s = kernels_scalar();
  std::size_t n = 512;
  auto a = randomReal(n, 77), b = randomReal(n, 88);
  std::vector<double> o1(n), o2(n);
  s.rmul(o1.data(), a.data(), b.data(), n);
  v->rmul(o2.data(), a.data(), b.data(), n);
  CHECK(maxAbsDiff(o1, o2) == 0.0);
}
