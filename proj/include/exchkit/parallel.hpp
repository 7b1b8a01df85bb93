#pragma once

#include <cstddef>
#include <functional>

namespace exchkit {

/// Worker count: EXCHKIT_THREADS if set to an integer >= 1, otherwise the
/// hardware concurrency, never more than `jobs`.
int thread_budget(std::size_t jobs);

/// Calls body(i) for i in [0, count) over a pool of thread_budget(count)
/// threads. The first exception thrown by any call is rethrown after all
/// workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace exchkit
