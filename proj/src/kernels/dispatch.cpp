#include "kpcyl/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace kpcyl {

namespace {

const KernelTable* select() {
  const char* force = std::getenv("KPCYL_KERNELS");
  if (force && std::strcmp(force, "scalar") == 0) return &kernels_scalar();
#if defined(__x86_64__) || defined(_M_X64)
  if (const KernelTable* avx2 = kernels_avx2()) {
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
      return avx2;
  }
#endif
  return &kernels_scalar();
}

}  // namespace

const KernelTable& kernels() {
  static const KernelTable* t = select();
  return *t;
}

}  // namespace kpcyl
