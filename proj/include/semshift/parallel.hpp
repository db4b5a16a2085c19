#pragma once

#include <cstddef>
#include <functional>

namespace semshift {

// Worker count used by the parallel loops in this library. Defaults to the
// SEMSHIFT_THREADS environment variable, else 1. Results never depend on it.
std::size_t thread_count();
void set_thread_count(std::size_t n);

// Calls fn(i) for i in [0, n). Each index is visited exactly once; callers must
// write results into index-addressed slots so output order is fixed.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace semshift
