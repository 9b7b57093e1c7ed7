#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

#include "bq/ints.hpp"

namespace bq {

// Thread count resolution order: explicit request > BQ_THREADS > hardware.
inline int resolve_thread_count(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BQ_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(slice) for slice = 0 .. n_slices-1 on a worker pool. The slice
// decomposition is fixed (independent of thread count), so any reduction
// that merges per-slice results in slice index order is deterministic.
// fn must write only to its own slice's state.
template <class F>
void run_slices(std::size_t n_slices, int threads, F&& fn) {
  threads = resolve_thread_count(threads);
  if (threads <= 1 || n_slices <= 1) {
    for (std::size_t s = 0; s < n_slices; ++s) fn(s);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t s = next.fetch_add(1);
      if (s >= n_slices) return;
      fn(s);
    }
  };
  std::vector<std::thread> pool;
  int n = std::min<int>(threads, static_cast<int>(n_slices));
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

// Deterministic sum of per-slice partial results (merged in slice order,
// which fixes the floating point reduction order).
template <class T, class F>
T sum_slices(std::size_t n_slices, int threads, F&& fn) {
  std::vector<T> partial(n_slices, T{});
  run_slices(n_slices, threads, [&](std::size_t s) { partial[s] = fn(s); });
  T total{};
  for (const T& v : partial) total += v;
  return total;
}

inline constexpr std::size_t kDefaultSliceCount = 64;

}  // namespace bq
