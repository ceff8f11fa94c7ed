#pragma once

#include <cstddef>
#include <functional>

namespace markedpoints {

/// Worker count for a request: a positive request is capped by the
/// MARKEDPOINTS_THREADS environment variable when that is set and positive;
/// 0 means the variable's value, or the hardware concurrency when the
/// variable is unset or 0.
std::size_t resolve_threads(std::size_t requested = 0);

/// Runs body(i) for i in [0, n) on up to `threads` workers with a static
/// partition. If any calls throw, the exception of the smallest index is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body);

} // namespace markedpoints
