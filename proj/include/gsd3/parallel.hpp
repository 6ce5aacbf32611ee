#pragma once

#include <cstddef>
#include <functional>

namespace gsd3 {

// Worker cap: GSD3_THREADS when set to a positive integer, otherwise the
// hardware concurrency; always clamped to [1, 32]. Read on each call.
int worker_count();

// Runs fn(i) for i in [0, n). Iterations must write only to disjoint slots;
// completion order is unspecified but the caller indexes results, so output
// never depends on scheduling. Nested calls degrade to serial execution.
// The first exception thrown by any iteration is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace gsd3
