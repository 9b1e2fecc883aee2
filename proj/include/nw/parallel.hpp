#pragma once

#include <cstddef>
#include <functional>

namespace nw {

int default_threads();

// Calls f(k) for every k in [0, n) on up to `threads` workers. Indices are
// claimed in blocks from a shared counter, so callers that write only to slot
// k of a preallocated result get output independent of scheduling. The first
// exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f);

}  // namespace nw
