#pragma once

#include <cstddef>
#include <functional>

namespace robfrechet {

// Runs body(0..count-1) across worker threads. Each index must write only its
// own output slot, so results do not depend on scheduling. Calls made from
// inside a running parallel_for execute sequentially. If bodies throw, the
// exception from the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Defaults to std::thread::hardware_concurrency(); 1 disables threading.
std::size_t worker_count() noexcept;
void set_worker_count(std::size_t workers) noexcept;

}  // namespace robfrechet
