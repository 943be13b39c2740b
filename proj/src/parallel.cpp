#include "covmin/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>

namespace covmin {
namespace {

std::size_t default_threads() {
  if (const char* env = std::getenv("COVMIN_THREADS")) {
    try {
      long value = std::stol(env);
      return value < 1 ? 1 : static_cast<std::size_t>(value);
    } catch (const std::exception&) {
      // fall through to hardware concurrency
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::atomic<std::size_t>& configured() {
  static std::atomic<std::size_t> value{default_threads()};
  return value;
}

// Indices handed out per grab; keeps contention low for cheap bodies.
constexpr std::size_t kGrain = 8;

}  // namespace

std::size_t thread_count() { return configured().load(); }

void set_thread_count(std::size_t count) { configured().store(std::max<std::size_t>(1, count)); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(thread_count(), (count + kGrain - 1) / kGrain);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto run = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      std::size_t begin = next.fetch_add(kGrain);
      if (begin >= count) return;
      std::size_t end = std::min(count, begin + kGrain);
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace covmin
