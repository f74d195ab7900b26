#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace psn {

/// Worker count: PSN_THREADS (capped at 1024) when set, otherwise the
/// hardware concurrency (at least 1). Throws InvalidArgument when PSN_THREADS
/// is not a positive integer.
int worker_threads();

/// Runs body(worker, begin, end) over `workers` contiguous blocks of [0, n)
/// and rethrows the first exception in worker order.
void parallel_blocks(int n, int workers, const std::function<void(int, int, int)>& body);

}  // namespace psn
