#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace covmin {

/// Worker count used by the internal parallel maps. Defaults to the
/// COVMIN_THREADS environment variable when set, else the hardware
/// concurrency. Values below 1 are treated as 1.
std::size_t thread_count();
void set_thread_count(std::size_t count);

/// Calls body(i) for every i in [0, count) on up to thread_count() threads.
/// Each index is visited exactly once; callers write results into
/// preallocated slots so the outcome does not depend on scheduling. The
/// first exception thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Evaluates fn(i) for i in [0, count) into a vector in index order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn) {
  std::vector<T> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace covmin
