#pragma once

#include <cstddef>
#include <functional>

namespace lpshift {

// Worker count: explicit request wins, then LPSHIFT_THREADS, then
// hardware_concurrency. Worker count must never change any result;
// it only partitions work over independent slots.
int resolve_threads(int requested = 0);

// Run fn(begin, end) over [0, n) in contiguous blocks, one per worker.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& fn);

// Per-worker variant: fn(worker_index, begin, end), so callers can keep
// one scratch buffer per worker.
void parallel_for_workers(std::size_t n, int threads,
                          const std::function<void(int, std::size_t, std::size_t)>& fn);

}  // namespace lpshift
