#pragma once

#include <functional>

namespace dmu {

// Worker count: DMU_THREADS when set to a positive integer, hardware concurrency otherwise.
int thread_count();

// body(i) for i in [0, n), strided across workers. Each index runs exactly once and
// callers write only to their own output slot, so results do not depend on scheduling.
// The first exception thrown by any worker is rethrown after the join.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace dmu
