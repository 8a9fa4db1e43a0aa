#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace uavnet {

/// Worker count used when the caller asks for 0 ("use the machine").
inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, n) into contiguous chunks, one per worker, and calls
/// body(worker, begin, end). Work items must write only to slots they own so
/// results do not depend on the worker count.
template <class Body>
void parallel_chunks(std::size_t n, unsigned workers, Body&& body) {
  const std::size_t w = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(n, 1));
  if (w <= 1) {
    body(0u, std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(w);
  {
    std::vector<std::jthread> pool;
    pool.reserve(w);
    for (std::size_t t = 0; t < w; ++t) {
      const std::size_t begin = n * t / w;
      const std::size_t end = n * (t + 1) / w;
      pool.emplace_back([&, t, begin, end] {
        try {
          body(static_cast<unsigned>(t), begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace uavnet
