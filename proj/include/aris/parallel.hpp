#pragma once

#include <cstddef>
#include <functional>

namespace aris {

// Runs fn(i) for every i in [0, count) on up to n_workers threads.
// Scheduling order is nondeterministic, so tasks must depend only on their own
// index and write results into preallocated per-index slots; under that
// contract the outcome is identical for any worker count.
void parallel_for(std::size_t count, unsigned n_workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace aris
