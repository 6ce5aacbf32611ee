#include "gsd3/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gsd3 {

namespace {

thread_local bool g_inside_region = false;

}  // namespace

int worker_count() {
  long requested = 0;
  if (const char* env = std::getenv("GSD3_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end && end != env && *end == '\0' && parsed > 0) requested = parsed;
  }
  if (requested == 0) requested = static_cast<long>(std::thread::hardware_concurrency());
  if (requested < 1) requested = 1;
  if (requested > 32) requested = 32;
  return static_cast<int>(requested);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  if (workers <= 1 || g_inside_region || n == 1) {
    const bool saved = g_inside_region;
    g_inside_region = true;
    try {
      for (std::size_t i = 0; i < n; ++i) fn(i);
    } catch (...) {
      g_inside_region = saved;
      throw;
    }
    g_inside_region = saved;
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&] {
    g_inside_region = true;
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        break;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace gsd3
