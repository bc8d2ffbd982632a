#pragma once

#include <functional>

namespace moire {

// Runs task(0..n_tasks-1) on up to `threads` workers pulling from an atomic
// counter. Tasks must write only to their own preallocated slots; any ordered
// reduction happens afterwards on the caller's thread, so results are
// independent of the thread count. First task exception is rethrown.
void parallel_for(int n_tasks, int threads, const std::function<void(int)>& task);

}  // namespace moire
