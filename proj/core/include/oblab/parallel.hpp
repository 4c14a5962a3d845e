#pragma once

#include <cstddef>
#include <functional>

namespace oblab {

// Worker count: LAB_THREADS env var if set (>=1), else hardware concurrency.
size_t worker_count();

// Runs fn(i) for i in [begin, end) on up to worker_count() threads, in
// contiguous index blocks. Callers must make per-index work independent;
// results keyed by index are then scheduling-independent.
void parallel_for(size_t begin, size_t end, const std::function<void(size_t)>& fn);

}  // namespace oblab
