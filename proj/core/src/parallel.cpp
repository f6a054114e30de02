#include "tubal/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace tubal {

std::size_t worker_count()
{
  std::size_t n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (char const* env = std::getenv("TUBAL_THREADS")) {
    try {
      long const cap = std::stol(env);
      if (cap >= 1) {
        n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
      }
    } catch (std::exception const&) {
      // unparsable values are ignored
    }
  }
  return n;
}

void parallel_for(std::ptrdiff_t count, const std::function<void(std::ptrdiff_t)>& body)
{
  if (count <= 0) {
    return;
  }
  std::size_t const workers = std::min<std::size_t>(worker_count(), static_cast<std::size_t>(count));
  if (workers <= 1) {
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }

  std::atomic<std::ptrdiff_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::ptrdiff_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

} // namespace tubal
