#pragma once

#include <cstddef>
#include <functional>

namespace hashbound {

/// Worker count: HASHBOUND_THREADS if set and positive, else the hardware count.
int default_thread_count();

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = default).
/// Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads = 0);

}  // namespace hashbound
