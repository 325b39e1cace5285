#pragma once

#include <cstddef>
#include <functional>

namespace hcube {

// Worker count: HC_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t thread_count();

// Runs body(i) for i in [0, count) on up to thread_count() threads.
// Iterations must write to disjoint outputs; the first exception thrown by
// any iteration is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hcube
