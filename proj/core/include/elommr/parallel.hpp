#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace elommr {

// Runs fn(i) for i in [0, n) over `threads` workers, each owning one contiguous
// chunk. Results must only depend on i, so the output never depends on the
// worker count. If several calls throw, the exception from the lowest index is
// rethrown, matching the serial behaviour.
template <class Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  auto run_chunk = [&](std::size_t chunk) {
    const std::size_t begin = n * chunk / threads;
    const std::size_t end = n * (chunk + 1) / threads;
    try {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    } catch (...) {
      errors[chunk] = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads - 1);
    for (std::size_t chunk = 1; chunk < threads; ++chunk) workers.emplace_back(run_chunk, chunk);
    run_chunk(0);
  }
  for (auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

}  // namespace elommr
