#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#ifdef BIMETRO_HAVE_PSTL
#include <algorithm>
#include <exception>
#include <execution>
#include <mutex>
#endif

namespace bimetro {

// Runs fn(i) for i in [0, count), in parallel when a parallel STL backend is
// available.  Callers must write results into per-index slots so the outcome
// is independent of scheduling.  An exception thrown by fn is rethrown after
// the loop (an exception escaping a parallel std::for_each would otherwise
// terminate the process).
template <typename Fn>
void parallel_index_for(std::size_t count, Fn&& fn) {
#ifdef BIMETRO_HAVE_PSTL
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::exception_ptr failure;
  std::mutex mutex;
  std::for_each(std::execution::par, idx.begin(), idx.end(),
                [&](std::size_t i) {
                  try {
                    fn(i);
                  } catch (...) {
                    const std::lock_guard<std::mutex> lock(mutex);
                    if (!failure) failure = std::current_exception();
                  }
                });
  if (failure) std::rethrow_exception(failure);
#else
  for (std::size_t i = 0; i < count; ++i) fn(i);
#endif
}

}  // namespace bimetro
