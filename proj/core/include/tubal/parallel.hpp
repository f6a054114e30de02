#pragma once

#include <cstddef>
#include <functional>

namespace tubal {

/// Number of worker threads the library may use: the hardware concurrency,
/// capped by the TUBAL_THREADS environment variable when it is set.
std::size_t worker_count();

/// Runs body(0..count-1) across up to worker_count() threads. Each index is
/// visited exactly once; the first exception thrown by any index is rethrown
/// after all workers finish.
void parallel_for(std::ptrdiff_t count, const std::function<void(std::ptrdiff_t)>& body);

} // namespace tubal
