#include "cauchylab/parallel.hpp"

namespace cauchylab {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_num_threads(unsigned n) { g_threads = n; }

unsigned num_threads() {
  const unsigned n = g_threads.load();
  if (n != 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace cauchylab
