#include "dstab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dstab {

unsigned worker_count() {
  if (const char* env = std::getenv("DSTAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 256) {
      return static_cast<unsigned>(v);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

void parallel_chunks(std::size_t total, unsigned workers,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
  if (total == 0) return;
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));
  if (n == 1) {
    fn(0, total);
    return;
  }
  const std::size_t chunk = (total + n - 1) / n;
  std::vector<std::thread> threads;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (unsigned w = 0; w < n; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
    const std::size_t end = std::min(total, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dstab
