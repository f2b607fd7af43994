#pragma once

#include <cstddef>
#include <functional>

namespace wsd {

/// Worker cap for all parallel loops; 0 means hardware concurrency.
void set_max_threads(unsigned threads);
unsigned max_threads();

/// Calls `body(i)` for every i in [0, count) across up to max_threads()
/// workers. Callers write results by index, so output is independent of
/// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace wsd
