#pragma once

#include <cstdlib>
#include <new>
#include <thread>
#include <vector>

namespace kpcyl {

// 64-byte aligned storage so FFTW plans and SIMD loops see one alignment class.
template <class T>
struct AlignedAlloc {
  using value_type = T;
  AlignedAlloc() = default;
  template <class U>
  AlignedAlloc(const AlignedAlloc<U>&) {}
  T* allocate(std::size_t n) {
    void* p = ::operator new[](n * sizeof(T), std::align_val_t(64));
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept {
    ::operator delete[](p, std::align_val_t(64));
  }
  template <class U>
  bool operator==(const AlignedAlloc<U>&) const { return true; }
};

template <class T>
using avec = std::vector<T, AlignedAlloc<T>>;

int worker_count();           // defaults to hardware_concurrency, settable
void set_worker_count(int n);

// Static partition of [0, n) across workers; results must be written to
// disjoint slots by the body. Deterministic regardless of thread count.
template <class F>
void parallel_for(int n, F&& body) {
  int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace kpcyl
