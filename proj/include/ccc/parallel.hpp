#pragma once

#include <cstddef>
#include <functional>

namespace ccc {

int default_thread_count();

// Runs fn(i) for i in [0, count). Work items must be independent; callers get
// deterministic results by writing to disjoint, index-addressed slots.
// threads == 0 picks the hardware default; threads <= 1 runs inline.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, int threads = 0);

}  // namespace ccc
