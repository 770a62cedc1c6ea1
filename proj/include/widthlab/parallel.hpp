#pragma once

#include <cstddef>
#include <functional>

namespace widthlab {

// Worker count: WIDTHLAB_THREADS env var caps it, 0 or unset means auto.
unsigned thread_count();

// Runs fn(i) for i in [0, count), split over thread_count() workers in
// contiguous chunks. Callers write results into index-addressed storage so
// the outcome is independent of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace widthlab
