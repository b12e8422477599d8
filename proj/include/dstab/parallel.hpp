#pragma once

#include <cstddef>
#include <functional>

namespace dstab {

// Worker count for parallel sections: DSTAB_THREADS when set to a positive
// integer, otherwise the hardware concurrency (at least 1).
unsigned worker_count();

// Runs fn(begin, end) over a static partition of [0, total) across at most
// `workers` threads.  Partitioning depends only on (total, workers), so
// callers that combine per-chunk results by index stay deterministic.
// The first exception thrown by any chunk is rethrown after joining.
void parallel_chunks(std::size_t total, unsigned workers,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace dstab
