#pragma once

#include <cstddef>
#include <functional>

namespace specbound {

/// Thread count from SPECBOUND_THREADS, or 1 when unset or invalid.
unsigned threads_from_env();

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// processed exactly once; callers store per-index results and reduce them in
/// index order, so the outcome does not depend on the thread count.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace specbound
