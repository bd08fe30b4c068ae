#pragma once

#include <cstddef>
#include <functional>

namespace skflt {

/// Worker count: hardware default, capped by the SKFLT_THREADS environment
/// variable when set. Always at least 1.
std::size_t worker_count();

/// Runs fn(0..count-1), possibly concurrently. Each index must be
/// independent; callers write results into preassigned slots so aggregation
/// order never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace skflt
