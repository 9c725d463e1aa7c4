#pragma once

#include <functional>

namespace wiretap {

// Worker pool size: requested count, capped by the WIRETAP_LAB_THREADS
// environment variable and the hardware; requested <= 0 means "auto".
int worker_count(int requested);

// Runs body(0..count-1) on up to `threads` workers. Exceptions are
// propagated; results must be written to disjoint slots so assembly stays
// deterministic.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

}  // namespace wiretap
