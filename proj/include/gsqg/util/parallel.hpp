#pragma once

#include <functional>

namespace gsqg::util {

/// Worker cap from GSQG_THREADS (0 or unset = hardware concurrency), clamped
/// to at least 1. Read once per process.
int worker_count();

/// Runs fn(begin, end) over a static partition of [0, n) across the workers.
/// Each chunk owns a disjoint index range, so writes to per-index slots are
/// race-free and the result is independent of the worker count.
void parallel_for(int n, const std::function<void(int, int)>& fn);

}  // namespace gsqg::util
