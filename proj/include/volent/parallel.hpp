#pragma once

#include <cstddef>
#include <functional>

namespace volent {

// Runs fn(i) for i in [0, n). Each index must write only its own output
// slot; results are then independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  unsigned threads = 0);

// VOLENT_THREADS overrides hardware_concurrency.
unsigned default_threads();

}  // namespace volent
