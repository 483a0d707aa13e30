#pragma once

#include <cstddef>
#include <functional>

namespace psifrac {

/// Worker count: PSIFRAC_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Run body(i) for i in [0, n) on up to thread_count() threads. Small ranges
/// run inline. body must be safe to call concurrently for distinct i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace psifrac
