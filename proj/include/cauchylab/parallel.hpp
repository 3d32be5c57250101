#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cauchylab {

/// Worker count used by the parallel kernels. 0 restores the default
/// (std::thread::hardware_concurrency()).
void set_num_threads(unsigned n);
unsigned num_threads();

/// Calls fn(begin, end, block_index) for every block [k*block, min(n, (k+1)*block)).
/// Block boundaries depend only on n and block, never on the thread count.
template <class Fn>
void for_each_block(std::size_t n, std::size_t block, Fn&& fn) {
  if (n == 0) return;
  block = std::max<std::size_t>(block, 1);
  const std::size_t blocks = (n + block - 1) / block;
  const std::size_t workers = std::min<std::size_t>(num_threads(), blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) fn(b * block, std::min(n, (b + 1) * block), b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t b = next++; b < blocks; b = next++) {
      try {
        fn(b * block, std::min(n, (b + 1) * block), b);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

/// Deterministic reduction: each block's partial(begin, end) is computed in
/// index order and the partials are summed in block order, so the result is
/// bit-identical for any thread count.
template <class T, class Partial>
T blocked_sum(std::size_t n, std::size_t block, Partial&& partial) {
  if (n == 0) return T{};
  block = std::max<std::size_t>(block, 1);
  std::vector<T> partials((n + block - 1) / block, T{});
  for_each_block(n, block, [&](std::size_t begin, std::size_t end, std::size_t b) {
    partials[b] = partial(begin, end);
  });
  T total{};
  for (const T& p : partials) total += p;
  return total;
}

}  // namespace cauchylab
