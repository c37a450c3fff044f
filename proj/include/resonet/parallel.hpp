// parallel.hpp — Deterministic index-parallel loop

#pragma once

#include <cstddef>
#include <functional>

namespace resonet {

// Worker count: RESONET_THREADS when set to a positive integer, otherwise
// the hardware concurrency (at least 1).
std::size_t worker_count();

// Runs body(i) for i in [0, count). Each index writes only its own slot,
// so results are independent of scheduling. The exception thrown by the
// lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace resonet
