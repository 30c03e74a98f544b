#pragma once

// Parallel loop that carries the first exception out of the OpenMP region.

#include <omp.h>

#include <cstddef>
#include <exception>
#include <mutex>

namespace cliffext::detail {

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::exception_ptr err;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < n; ++i) {
    if (err) continue;
    try {
      fn(i);
    } catch (...) {
      std::lock_guard lock(mu);
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace cliffext::detail
