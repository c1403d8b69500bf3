#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace assouad {

/// Number of worker threads used by batch operations (>= 1).
int worker_threads();

/// Sets the worker count; 0 restores the runtime default.
void set_worker_threads(int threads);

/// Runs body(i) for i in [0, count) on the worker pool.
///
/// Iterations must write only to their own slot of a preallocated output;
/// callers reduce those slots in index order, which keeps every result
/// independent of the thread count.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body);

} // namespace assouad
