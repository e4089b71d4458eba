#pragma once

#include <cstddef>
#include <functional>

namespace tsde {

/// Worker count: TORICSDE_WORKERS if set, else hardware concurrency.
unsigned worker_count();

/// Runs fn(0..n-1) on a worker pool. Results must be written to per-index
/// slots by the caller so reductions stay deterministic. The first exception
/// thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace tsde
