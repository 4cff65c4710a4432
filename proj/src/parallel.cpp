#include "robfrechet/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace robfrechet {
namespace {

std::atomic<std::size_t>& configured_workers() {
  static std::atomic<std::size_t> workers{std::max(1u, std::thread::hardware_concurrency())};
  return workers;
}

thread_local bool inside_parallel_region = false;

}  // namespace

std::size_t worker_count() noexcept { return configured_workers().load(); }

void set_worker_count(std::size_t workers) noexcept {
  configured_workers().store(std::max<std::size_t>(1, workers));
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(worker_count(), count);
  if (inside_parallel_region || workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::size_t failed_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;

  auto worker = [&] {
    inside_parallel_region = true;
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
    inside_parallel_region = false;
  };

  std::vector<std::jthread> threads;
  threads.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) threads.emplace_back(worker);
  worker();
  threads.clear();

  if (failure) std::rethrow_exception(failure);
}

}  // namespace robfrechet
