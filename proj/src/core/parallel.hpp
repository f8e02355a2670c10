#pragma once

#include <cstddef>
#include <functional>

namespace cpsres {

// Worker cap from CPSRES_THREADS; 0 or unset falls back to the hardware.
std::size_t resolve_thread_count();

// Runs fn(i) for every i in [0,n). Work items are claimed from a shared
// counter; callers must write results by index so the merged output never
// depends on completion order. The first exception wins and is rethrown
// after all workers drain.
void parallel_for_index(std::size_t n,
                        const std::function<void(std::size_t)>& fn);

}  // namespace cpsres
