#include "ztf/reduce.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ztf {

namespace {
std::atomic<int> g_workers{1};
}

void set_worker_count(int workers) { g_workers.store(workers < 1 ? 1 : workers); }

int worker_count() { return g_workers.load(); }

namespace detail {

void run_blocks(std::size_t count, void* ctx,
                void (*body)(void*, std::size_t, std::size_t)) {
  const std::size_t workers = static_cast<std::size_t>(worker_count());
  if (workers <= 1 || count < 2) {
    body(ctx, 0, count);
    return;
  }
  const std::size_t used = workers < count ? workers : count;
  const std::size_t chunk = (count + used - 1) / used;

  std::vector<std::thread> pool;
  pool.reserve(used);
  std::exception_ptr first_error;
  std::mutex error_lock;
  for (std::size_t t = 0; t < used; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = begin + chunk < count ? begin + chunk : count;
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        body(ctx, begin, end);
      } catch (...) {
        std::scoped_lock hold(error_lock);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

}  // namespace ztf
