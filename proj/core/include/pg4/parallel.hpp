#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace pg4 {

/// 0 means "use the available hardware parallelism".
inline unsigned resolve_workers(unsigned requested) noexcept {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, n) into contiguous chunks and runs fn(begin, end) on each chunk.
/// Every index is handled by exactly one call, so callers writing to
/// per-index slots get results independent of the worker count.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  const std::size_t threads = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(n, 1));
  if (threads <= 1 || n < 64) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(n, t * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          fn(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace pg4
