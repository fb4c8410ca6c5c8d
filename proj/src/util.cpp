#include "kpcyl/util.hpp"

#include <atomic>

namespace kpcyl {

namespace {
std::atomic<int> workers{0};
}

int worker_count() {
  int w = workers.load();
  if (w > 0) return w;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

void set_worker_count(int n) { workers.store(n > 0 ? n : 0); }

}  // namespace kpcyl
